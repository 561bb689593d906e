//! Monodromy of polynomials with two critical values, dessins d'enfants,
//! difference polynomials and Beauville structures on finite groups.

pub mod beauville;
pub mod dessins;
pub mod diffpoly;
pub mod groups;
pub mod monodromy;
pub mod perm;
pub mod polyexact;

pub use perm::{CycleType, PermError, Permutation};
