//! Finite groups with order, generation and conjugacy oracles.
//!
//! Every family implements [`FiniteGroup`]. A class key is a complete
//! conjugacy invariant: `x` and `y` are conjugate iff their keys agree.

mod abelian;
mod class_table;
mod h4;
mod matrix;
mod permgroup;
mod symmetric;

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::perm::Permutation;

pub use abelian::ZnxZn;
pub use class_table::ClassTable;
pub use h4::{H2View, H4Elem, H4Group};
pub use matrix::{Gl3F2, Mat2, Mat3F2, Psl2, Sl2};
pub use permgroup::PermGroup;
pub use symmetric::{AltGroup, AltKey, SymGroup};

/// Closure budget used when a caller does not pick one.
pub const DEFAULT_BUDGET: u64 = 2_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid group parameters: {0}")]
    Parameters(String),
    #[error("cannot decode element: {0}")]
    Decode(String),
    #[error("element is not in {0}")]
    NotMember(String),
    #[error("unknown group spec `{0}`")]
    Spec(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Generation {
    Yes,
    No,
    Unknown,
}

impl Generation {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Generation::Yes
        } else {
            Generation::No
        }
    }
}

/// A named automorphism.
pub type Automorphism<E> = Arc<dyn Fn(&E) -> E + Send + Sync>;

/// Representatives of `Aut(G)` modulo `Inn(G)`, the identity first. When
/// `complete` is false the list may miss some cosets.
#[derive(Clone)]
pub struct AutSupply<E> {
    pub representatives: Vec<(String, Automorphism<E>)>,
    pub complete: bool,
}

impl<E: Clone + 'static> AutSupply<E> {
    pub fn inner_only(complete: bool) -> Self {
        AutSupply {
            representatives: vec![("id".to_string(), Arc::new(|x: &E| x.clone()))],
            complete,
        }
    }

    pub fn with(mut self, name: &str, f: impl Fn(&E) -> E + Send + Sync + 'static) -> Self {
        self.representatives.push((name.to_string(), Arc::new(f)));
        self
    }
}

impl<E> fmt::Debug for AutSupply<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.representatives.iter().map(|(n, _)| n.as_str()).collect();
        f.debug_struct("AutSupply")
            .field("representatives", &names)
            .field("complete", &self.complete)
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass<E, K> {
    pub representative: E,
    pub key: K,
    pub size: u64,
    pub element_order: u64,
}

pub trait FiniteGroup: Send + Sync {
    type Elem: Clone + Eq + Hash + Ord + fmt::Debug + Send + Sync;
    type ClassKey: Clone + Eq + Hash + Ord + fmt::Debug + Send + Sync;

    /// The group descriptor, e.g. `"sym:8"`.
    fn spec(&self) -> String;
    fn identity(&self) -> Self::Elem;
    /// `a · b`; for permutations, `b` acts first.
    fn compose(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn invert(&self, a: &Self::Elem) -> Self::Elem;
    fn order(&self) -> u64;
    fn generators(&self) -> Vec<Self::Elem>;
    fn contains(&self, x: &Self::Elem) -> bool;
    fn class_key(&self, x: &Self::Elem) -> Self::ClassKey;
    /// All conjugacy classes in a fixed order.
    fn classes(&self) -> Vec<ConjugacyClass<Self::Elem, Self::ClassKey>>;
    fn for_each_element(&self, f: &mut dyn FnMut(&Self::Elem));
    fn encode(&self, x: &Self::Elem) -> Value;
    fn decode(&self, v: &Value) -> Result<Self::Elem, GroupError>;

    /// Known automorphisms modulo inner ones.
    fn automorphisms(&self) -> AutSupply<Self::Elem>
    where
        Self::Elem: 'static,
    {
        AutSupply::inner_only(false)
    }

    /// The element as a permutation, for families that are permutation groups.
    fn as_permutation(&self, _x: &Self::Elem) -> Option<Permutation> {
        None
    }

    /// `g · x · g⁻¹`.
    fn conjugate(&self, x: &Self::Elem, g: &Self::Elem) -> Self::Elem {
        self.compose(&self.compose(g, x), &self.invert(g))
    }

    fn conjugacy_related(&self, x: &Self::Elem, y: &Self::Elem) -> bool {
        self.class_key(x) == self.class_key(y)
    }

    fn pow(&self, x: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = x.clone();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.compose(&acc, &base);
            }
            base = self.compose(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn element_order(&self, x: &Self::Elem) -> u64 {
        let id = self.identity();
        let mut y = x.clone();
        let mut k = 1;
        while y != id {
            y = self.compose(&y, x);
            k += 1;
        }
        k
    }

    /// Order of `⟨gens⟩`, or `None` once it exceeds `budget`.
    fn subgroup_order(&self, gens: &[Self::Elem], budget: u64) -> Option<u64> {
        let id = self.identity();
        let mut seen: HashSet<Self::Elem> = HashSet::new();
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = self.compose(&x, g);
                if seen.insert(y.clone()) {
                    if seen.len() as u64 > budget {
                        return None;
                    }
                    queue.push_back(y);
                }
            }
        }
        Some(seen.len() as u64)
    }

    fn generates(&self, gens: &[Self::Elem], budget: u64) -> Generation {
        if !gens.iter().all(|g| self.contains(g)) {
            return Generation::No;
        }
        match self.subgroup_order(gens, budget.max(1)) {
            Some(k) => Generation::from_bool(k == self.order()),
            None => Generation::Unknown,
        }
    }

    /// Some `g` with `g·x·g⁻¹ = y` for every `(x, y)` in `pairs`.
    fn simultaneous_conjugator(&self, pairs: &[(Self::Elem, Self::Elem)]) -> Option<Self::Elem> {
        if pairs.iter().any(|(x, y)| self.class_key(x) != self.class_key(y)) {
            return None;
        }
        let mut found = None;
        self.for_each_element(&mut |g| {
            if found.is_none() && pairs.iter().all(|(x, y)| self.conjugate(x, g) == *y) {
                found = Some(g.clone());
            }
        });
        found
    }

    fn elements(&self) -> Vec<Self::Elem> {
        let mut out = Vec::new();
        self.for_each_element(&mut |x| out.push(x.clone()));
        out
    }
}

/// Parsed group spec string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Sym(usize),
    Alt(usize),
    Sl2(u32),
    Psl2(u32),
    ZnxZn(u32),
    Gl3F2,
    H4(Box<GroupSpec>),
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, GroupError> {
        let bad = || GroupError::Spec(s.to_string());
        let (family, rest) = s.split_once(':').unwrap_or((s, ""));
        let num = |t: &str| t.parse::<u32>().map_err(|_| bad());
        match family {
            "sym" => Ok(GroupSpec::Sym(num(rest)? as usize)),
            "alt" => Ok(GroupSpec::Alt(num(rest)? as usize)),
            "sl2" => Ok(GroupSpec::Sl2(num(rest)?)),
            "psl2" => Ok(GroupSpec::Psl2(num(rest)?)),
            "znxzn" => Ok(GroupSpec::ZnxZn(num(rest)?)),
            "gl3f2" if rest.is_empty() => Ok(GroupSpec::Gl3F2),
            "h4" => {
                let inner: GroupSpec = rest.parse()?;
                if matches!(inner, GroupSpec::H4(_)) {
                    return Err(bad());
                }
                Ok(GroupSpec::H4(Box::new(inner)))
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Sym(n) => write!(f, "sym:{n}"),
            GroupSpec::Alt(n) => write!(f, "alt:{n}"),
            GroupSpec::Sl2(p) => write!(f, "sl2:{p}"),
            GroupSpec::Psl2(p) => write!(f, "psl2:{p}"),
            GroupSpec::ZnxZn(n) => write!(f, "znxzn:{n}"),
            GroupSpec::Gl3F2 => write!(f, "gl3f2"),
            GroupSpec::H4(h) => write!(f, "h4:{h}"),
        }
    }
}

/// Builds the group named by a [`GroupSpec`] and evaluates `$body` with it
/// bound to `$g`, giving `Result<_, GroupError>`.
#[macro_export]
macro_rules! with_group {
    ($spec:expr, |$g:ident| $body:expr) => {{
        use $crate::groups::{
            AltGroup, Gl3F2, GroupSpec, H4Group, Psl2, Sl2, SymGroup, ZnxZn,
        };
        match $spec {
            GroupSpec::Sym(n) => SymGroup::new(*n).map(|$g| $body),
            GroupSpec::Alt(n) => AltGroup::new(*n).map(|$g| $body),
            GroupSpec::Sl2(p) => Sl2::new(*p).map(|$g| $body),
            GroupSpec::Psl2(p) => Psl2::new(*p).map(|$g| $body),
            GroupSpec::ZnxZn(n) => ZnxZn::new(*n).map(|$g| $body),
            GroupSpec::Gl3F2 => Ok(Gl3F2::new()).map(|$g| $body),
            GroupSpec::H4(inner) => match inner.as_ref() {
                GroupSpec::Sym(n) => SymGroup::new(*n).and_then(H4Group::new).map(|$g| $body),
                GroupSpec::Alt(n) => AltGroup::new(*n).and_then(H4Group::new).map(|$g| $body),
                GroupSpec::Sl2(p) => Sl2::new(*p).and_then(H4Group::new).map(|$g| $body),
                GroupSpec::Psl2(p) => Psl2::new(*p).and_then(H4Group::new).map(|$g| $body),
                GroupSpec::ZnxZn(n) => ZnxZn::new(*n).and_then(H4Group::new).map(|$g| $body),
                GroupSpec::Gl3F2 => H4Group::new(Gl3F2::new()).map(|$g| $body),
                GroupSpec::H4(_) => Err($crate::groups::GroupError::Spec(inner.to_string())),
            },
        }
    }};
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Decodes a permutation from a cycle string or a JSON list of cycles.
pub(crate) fn decode_permutation(v: &Value, degree: usize) -> Result<Permutation, GroupError> {
    let err = |e: crate::perm::PermError| GroupError::Decode(e.to_string());
    match v {
        Value::String(s) => Permutation::parse_cycles(s, degree).map_err(err),
        Value::Array(_) => {
            let cycles: Vec<Vec<u32>> = serde_json::from_value(v.clone())
                .map_err(|e| GroupError::Decode(e.to_string()))?;
            Permutation::from_cycles(&cycles, degree).map_err(err)
        }
        _ => Err(GroupError::Decode(format!("expected cycles, got {v}"))),
    }
}
