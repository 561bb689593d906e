//! Dessins d'enfants as bipartite ribbon graphs.
//!
//! Edge `k` is the preimage segment labelled `k`. A black vertex lists the
//! edges around it counterclockwise, which is a cycle of `τ₀`; white vertices
//! are the cycles of `τ₁`. Valence-one vertices are kept.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::monodromy::{MonodromyError, MonodromyPair};
use crate::perm::Permutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DessinError {
    #[error("edge {edge} lies on {count} {colour} vertices, expected exactly one")]
    Incidence {
        edge: u32,
        colour: &'static str,
        count: usize,
    },
    #[error("edge label {0} is outside 1..=edge_count")]
    EdgeRange(u32),
    #[error("Euler count {euler} is not of the form 2 - 2g")]
    Euler { euler: i64 },
    #[error(transparent)]
    Pair(#[from] MonodromyError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dessin {
    pub edge_count: usize,
    /// Counterclockwise edge orders, 1-based.
    pub black: Vec<Vec<u32>>,
    pub white: Vec<Vec<u32>>,
}

fn one_based_cycles(p: &Permutation) -> Vec<Vec<u32>> {
    p.cycles()
        .into_iter()
        .map(|c| c.into_iter().map(|x| x as u32 + 1).collect())
        .collect()
}

pub fn dessin_from_pair(p: &MonodromyPair) -> Result<Dessin, DessinError> {
    let report = p.validate();
    if !report.is_valid() {
        return Err(MonodromyError::InvalidPair(report.reasons).into());
    }
    Ok(Dessin {
        edge_count: p.degree(),
        black: one_based_cycles(&p.tau0),
        white: one_based_cycles(&p.tau1),
    })
}

impl Dessin {
    fn check_incidence(&self) -> Result<(), DessinError> {
        for (colour, vertices) in [("black", &self.black), ("white", &self.white)] {
            let mut seen = vec![0usize; self.edge_count];
            for &e in vertices.iter().flatten() {
                if e == 0 || e as usize > self.edge_count {
                    return Err(DessinError::EdgeRange(e));
                }
                seen[e as usize - 1] += 1;
            }
            if let Some(k) = seen.iter().position(|&c| c != 1) {
                return Err(DessinError::Incidence {
                    edge: k as u32 + 1,
                    colour,
                    count: seen[k],
                });
            }
        }
        Ok(())
    }

    pub fn face_count(&self) -> Result<usize, DessinError> {
        Ok(pair_from_dessin(self)?.product().cycle_count())
    }
}

/// Reads `(τ₀, τ₁)` off the cyclic orders. No validity check is made on the
/// pair beyond incidence, so degenerate data such as a star come back raw.
pub fn pair_from_dessin(d: &Dessin) -> Result<MonodromyPair, DessinError> {
    d.check_incidence()?;
    let tau0 = Permutation::from_cycles(&d.black, d.edge_count).map_err(MonodromyError::from)?;
    let tau1 = Permutation::from_cycles(&d.white, d.edge_count).map_err(MonodromyError::from)?;
    Ok(MonodromyPair { tau0, tau1 })
}

/// Genus from `#black + #white − n + #faces = 2 − 2g`.
pub fn genus_of_dessin(d: &Dessin) -> Result<u64, DessinError> {
    let faces = d.face_count()?;
    let euler = d.black.len() as i64 + d.white.len() as i64 - d.edge_count as i64 + faces as i64;
    if euler > 2 || euler % 2 != 0 {
        return Err(DessinError::Euler { euler });
    }
    Ok(((2 - euler) / 2) as u64)
}

/// DOT text: black vertices filled, white hollow, one edge per label; each
/// edge carries `ord="i,j"`, its positions in the black and white cyclic
/// orders, and each vertex records its full order in `order`.
pub fn export_dot(d: &Dessin) -> String {
    let mut pos_black = vec![(0usize, 0usize); d.edge_count];
    let mut pos_white = vec![(0usize, 0usize); d.edge_count];
    for (positions, vertices) in [(&mut pos_black, &d.black), (&mut pos_white, &d.white)] {
        for (v, cycle) in vertices.iter().enumerate() {
            for (i, &e) in cycle.iter().enumerate() {
                if let Some(slot) = positions.get_mut(e as usize - 1) {
                    *slot = (v, i);
                }
            }
        }
    }
    let join = |c: &[u32]| {
        c.iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    let mut out = String::new();
    out.push_str("graph dessin {\n");
    out.push_str("  node [shape=circle, label=\"\", width=0.2];\n");
    for (v, c) in d.black.iter().enumerate() {
        let _ = writeln!(
            out,
            "  b{} [style=filled, fillcolor=black, order=\"{}\"];",
            v + 1,
            join(c)
        );
    }
    for (v, c) in d.white.iter().enumerate() {
        let _ = writeln!(
            out,
            "  w{} [style=solid, fillcolor=white, order=\"{}\"];",
            v + 1,
            join(c)
        );
    }
    for e in 0..d.edge_count {
        let (bv, bi) = pos_black[e];
        let (wv, wi) = pos_white[e];
        let _ = writeln!(
            out,
            "  b{} -- w{} [label=\"{}\", ord=\"{},{}\"];",
            bv + 1,
            wv + 1,
            e + 1,
            bi,
            wi
        );
    }
    out.push_str("}\n");
    out
}
