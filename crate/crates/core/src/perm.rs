//! Permutations of `{1..n}`.
//!
//! Points are stored 0-based; every textual or JSON form uses 1-based points.
//!
//! Composition convention: `p.compose(&q)` is the map `x ↦ p(q(x))`, i.e. `q`
//! is applied first. Under this convention the dihedral pair
//! `τ₀ = (1,3,6)(4,5)`, `τ₁ = (1,2)(3,5)` multiplies to exactly `(1,2,3,4,5,6)`,
//! and the residue actions `i ↦ -i`, `i ↦ -i-1` on `ℤ/k` multiply to `i ↦ i+1`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("parse error at `{token}`: {reason}")]
    Parse { token: String, reason: String },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("images do not form a bijection of {{1..{degree}}}")]
    NotBijective { degree: usize },
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

/// Cycle lengths in non-increasing order, fixed points included.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycleType(pub Vec<usize>);

impl CycleType {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(parts)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn cycle_count(&self) -> usize {
        self.0.len()
    }

    /// `n − #cycles`, the contribution to the Riemann–Hurwitz count.
    pub fn deficiency(&self) -> usize {
        self.degree() - self.cycle_count()
    }

    pub fn nontrivial(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied().filter(|&l| l > 1)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&l| l == 1)
    }

    /// Parses `"2,2,1,1"` (any order; re-sorted).
    pub fn parse(text: &str) -> Result<Self, PermError> {
        let mut parts = Vec::new();
        for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let v: usize = tok.parse().map_err(|_| PermError::Parse {
                token: tok.to_string(),
                reason: "expected a positive integer".into(),
            })?;
            if v == 0 {
                return Err(PermError::Parse {
                    token: tok.to_string(),
                    reason: "cycle lengths are positive".into(),
                });
            }
            parts.push(v);
        }
        Ok(CycleType::new(parts))
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// The canonical n-cycle `(1,2,…,n)`.
    pub fn long_cycle(degree: usize) -> Self {
        let n = degree as u32;
        Permutation {
            images: (0..n).map(|i| (i + 1) % n.max(1)).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(PermError::NotBijective { degree: n });
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Images given 1-based, as in `[3,2,6,5,4,1]`.
    pub fn from_images_one_based(images: &[u32]) -> Result<Self, PermError> {
        if images.iter().any(|&i| i == 0) {
            return Err(PermError::NotBijective {
                degree: images.len(),
            });
        }
        Self::from_images(images.iter().map(|&i| i - 1).collect())
    }

    /// Builds a permutation from disjoint cycles of 1-based points.
    pub fn from_cycles(cycles: &[Vec<u32>], degree: usize) -> Result<Self, PermError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (k, &pt) in cycle.iter().enumerate() {
                let bad = |reason: &str| PermError::Parse {
                    token: pt.to_string(),
                    reason: reason.to_string(),
                };
                if pt == 0 || pt as usize > degree {
                    return Err(bad("point out of range"));
                }
                let i = (pt - 1) as usize;
                if used[i] {
                    return Err(bad("repeated point"));
                }
                used[i] = true;
                let next = cycle[(k + 1) % cycle.len()];
                images[i] = next - 1;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation such as `"(1,3,6)(4,5)"`; whitespace is ignored
    /// and the empty string is the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self, PermError> {
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut cycles = Vec::new();
        let mut rest = cleaned.as_str();
        while !rest.is_empty() {
            let Some(body_start) = rest.strip_prefix('(') else {
                return Err(PermError::Parse {
                    token: rest.chars().take(8).collect(),
                    reason: "expected `(`".into(),
                });
            };
            let Some(close) = body_start.find(')') else {
                return Err(PermError::Parse {
                    token: rest.to_string(),
                    reason: "unterminated cycle".into(),
                });
            };
            let body = &body_start[..close];
            let mut cycle = Vec::new();
            for tok in body.split(',') {
                let pt: u32 = tok.parse().map_err(|_| PermError::Parse {
                    token: tok.to_string(),
                    reason: "expected a positive integer".into(),
                })?;
                cycle.push(pt);
            }
            cycles.push(cycle);
            rest = &body_start[close + 1..];
        }
        Self::from_cycles(&cycles, degree)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based image of a 0-based point.
    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn images_one_based(&self) -> Vec<u32> {
        self.images.iter().map(|i| i + 1).collect()
    }

    /// `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        self.try_compose(other).expect("degree mismatch in compose")
    }

    pub fn try_compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(Permutation {
            images: other.images.iter().map(|&i| self.images[i as usize]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `g · self · g⁻¹`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        let mut out = vec![0u32; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            out[g.images[i] as usize] = g.images[j as usize];
        }
        Permutation { images: out }
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// Cycles as 0-based point lists, each starting at its least point, ordered
    /// by that point. Fixed points are included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Nontrivial cycles with 1-based points, the JSON wire form.
    pub fn to_cycles_one_based(&self) -> Vec<Vec<u32>> {
        self.cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| c.into_iter().map(|p| p as u32 + 1).collect())
            .collect()
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::new(self.cycles().iter().map(Vec::len).collect())
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// Length of the cycle through each point.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut out = vec![0; self.degree()];
        for c in self.cycles() {
            for &p in &c {
                out[p] = c.len();
            }
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.to_cycles_one_based();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let s: Vec<String> = c.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", s.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self, self.degree())
    }
}

/// JSON wire form: `{"degree": n, "cycles": [[1,3,6],[4,5]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutationJson {
    pub degree: usize,
    pub cycles: Vec<Vec<u32>>,
}

impl From<&Permutation> for PermutationJson {
    fn from(p: &Permutation) -> Self {
        PermutationJson {
            degree: p.degree(),
            cycles: p.to_cycles_one_based(),
        }
    }
}

impl TryFrom<PermutationJson> for Permutation {
    type Error = PermError;

    fn try_from(j: PermutationJson) -> Result<Self, PermError> {
        Permutation::from_cycles(&j.cycles, j.degree)
    }
}

/// Finds `g` with `g·xᵢ·g⁻¹ = yᵢ` for every pair, or `None` when no such `g`
/// exists.
///
/// Backtracks over the image of one base point per orbit of `⟨xᵢ⟩`; each
/// choice propagates along the orbit, so a transitive `⟨xᵢ⟩` leaves at most
/// `n` branches. Base points are taken from the smallest cycles first and
/// candidates are tried in increasing order, so the answer is reproducible.
pub fn simultaneous_conjugator(pairs: &[(Permutation, Permutation)]) -> Option<Permutation> {
    let Some(first) = pairs.first() else {
        return None;
    };
    let n = first.0.degree();
    if pairs
        .iter()
        .any(|(x, y)| x.degree() != n || y.degree() != n)
    {
        return None;
    }
    if pairs.iter().any(|(x, y)| x.cycle_type() != y.cycle_type()) {
        return None;
    }
    let xs: Vec<&Permutation> = pairs.iter().map(|(x, _)| x).collect();
    let ys: Vec<&Permutation> = pairs.iter().map(|(_, y)| y).collect();
    let x_len: Vec<Vec<usize>> = xs.iter().map(|x| x.cycle_lengths()).collect();
    let y_len: Vec<Vec<usize>> = ys.iter().map(|y| y.cycle_lengths()).collect();
    let x_inv: Vec<Permutation> = xs.iter().map(|x| x.inverse()).collect();
    let y_inv: Vec<Permutation> = ys.iter().map(|y| y.inverse()).collect();

    // Orbits of <x_i>, each with a base point in its smallest cycle.
    let mut orbit_of = vec![usize::MAX; n];
    let mut bases = Vec::new();
    for start in 0..n {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = bases.len();
        let mut members = vec![start];
        orbit_of[start] = id;
        let mut k = 0;
        while k < members.len() {
            let p = members[k];
            k += 1;
            for x in &xs {
                let q = x.apply(p);
                if orbit_of[q] == usize::MAX {
                    orbit_of[q] = id;
                    members.push(q);
                }
            }
        }
        let base = *members
            .iter()
            .min_by_key(|&&p| (x_len.iter().map(|l| l[p]).min().unwrap_or(1), p))
            .unwrap();
        bases.push(base);
    }

    struct Search<'a> {
        xs: &'a [&'a Permutation],
        ys: &'a [&'a Permutation],
        x_inv: &'a [Permutation],
        y_inv: &'a [Permutation],
        x_len: &'a [Vec<usize>],
        y_len: &'a [Vec<usize>],
        g: Vec<usize>,
        used: Vec<bool>,
    }

    impl Search<'_> {
        const UNSET: usize = usize::MAX;

        fn signature_matches(&self, p: usize, q: usize) -> bool {
            self.x_len
                .iter()
                .zip(self.y_len)
                .all(|(lx, ly)| lx[p] == ly[q])
        }

        /// Sets g(p) = q and propagates; returns the assigned points, or
        /// `None` after undoing a conflicting assignment.
        fn assign(&mut self, p: usize, q: usize) -> Option<Vec<usize>> {
            let mut assigned = Vec::new();
            let mut stack = vec![(p, q)];
            while let Some((p, q)) = stack.pop() {
                if self.g[p] != Self::UNSET {
                    if self.g[p] != q {
                        self.undo(&assigned);
                        return None;
                    }
                    continue;
                }
                if self.used[q] || !self.signature_matches(p, q) {
                    self.undo(&assigned);
                    return None;
                }
                self.g[p] = q;
                self.used[q] = true;
                assigned.push(p);
                for i in 0..self.xs.len() {
                    stack.push((self.xs[i].apply(p), self.ys[i].apply(q)));
                    stack.push((self.x_inv[i].apply(p), self.y_inv[i].apply(q)));
                }
            }
            Some(assigned)
        }

        fn undo(&mut self, assigned: &[usize]) {
            for &p in assigned {
                self.used[self.g[p]] = false;
                self.g[p] = Self::UNSET;
            }
        }

        fn run(&mut self, bases: &[usize]) -> bool {
            let Some((&base, rest)) = bases.split_first() else {
                return true;
            };
            if self.g[base] != Self::UNSET {
                return self.run(rest);
            }
            for q in 0..self.g.len() {
                if self.used[q] {
                    continue;
                }
                if let Some(assigned) = self.assign(base, q) {
                    if self.run(rest) {
                        return true;
                    }
                    self.undo(&assigned);
                }
            }
            false
        }
    }

    let mut search = Search {
        xs: &xs,
        ys: &ys,
        x_inv: &x_inv,
        y_inv: &y_inv,
        x_len: &x_len,
        y_len: &y_len,
        g: vec![Search::UNSET; n],
        used: vec![false; n],
    };
    if !search.run(&bases) {
        return None;
    }
    let g = Permutation::from_images(search.g.iter().map(|&q| q as u32).collect()).ok()?;
    pairs
        .iter()
        .all(|(x, y)| &x.conjugate_by(&g) == y)
        .then_some(g)
}

/// Raised when a closure exceeds its element cap.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("closure exceeded cap {cap} (reached at least {partial} elements)")]
pub struct ClosureOverflow {
    pub cap: usize,
    pub partial: usize,
}

/// The subgroup generated by `generators` as an element set, or an overflow
/// once more than `cap` elements have been produced.
pub fn closure(
    generators: &[Permutation],
    degree: usize,
    cap: usize,
) -> Result<HashSet<Permutation>, ClosureOverflow> {
    let identity = Permutation::identity(degree);
    let mut seen = HashSet::new();
    seen.insert(identity.clone());
    let mut queue = VecDeque::from([identity]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = x.compose(g);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(ClosureOverflow {
                        cap,
                        partial: seen.len() + 1,
                    });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(seen)
}

/// Orbits of the group generated by `generators` on `{0..degree}`.
pub fn orbits(generators: &[Permutation], degree: usize) -> Vec<Vec<usize>> {
    let mut orbit_of = vec![usize::MAX; degree];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for start in 0..degree {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        orbit_of[start] = id;
        let mut members = vec![start];
        let mut k = 0;
        while k < members.len() {
            let p = members[k];
            k += 1;
            for g in generators {
                let q = g.apply(p);
                if orbit_of[q] == usize::MAX {
                    orbit_of[q] = id;
                    members.push(q);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

pub fn is_transitive(generators: &[Permutation], degree: usize) -> bool {
    degree <= 1 || orbits(generators, degree).len() == 1
}

/// Whether a transitive group has no block system besides the trivial ones.
///
/// For each `b`, the finest block system with `0 ~ b` is built by union-find
/// closure (two points are merged whenever their images under a generator
/// must be); the group is primitive iff every such system is the single block.
pub fn is_primitive(generators: &[Permutation], degree: usize) -> bool {
    if !is_transitive(generators, degree) {
        return false;
    }
    if degree <= 2 {
        return true;
    }
    (1..degree).all(|b| minimal_block_is_everything(generators, degree, b))
}

fn minimal_block_is_everything(generators: &[Permutation], degree: usize, b: usize) -> bool {
    let mut parent: Vec<usize> = (0..degree).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut pending = vec![(0usize, b)];
    let mut classes = degree;
    while let Some((u, v)) = pending.pop() {
        let ru = find(&mut parent, u);
        let rv = find(&mut parent, v);
        if ru == rv {
            continue;
        }
        parent[rv] = ru;
        classes -= 1;
        if classes == 1 {
            return true;
        }
        for g in generators {
            pending.push((g.apply(u), g.apply(v)));
        }
    }
    classes == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(text, n).unwrap()
    }

    #[test]
    fn parses_cycle_notation() {
        let t = p("(1,3,6)(4,5)", 6);
        assert_eq!(t.images_one_based(), vec![3, 2, 6, 5, 4, 1]);
        assert!(p("", 4).is_identity());
        assert_eq!(p("(1,2,3,4,5,6)", 6), Permutation::long_cycle(6));
        assert_eq!(p(" ( 1 , 2 ) ", 3), p("(1,2)", 3));
    }

    #[test]
    fn parse_errors_name_the_token() {
        let err = Permutation::parse_cycles("(1,2)(2,3)", 4).unwrap_err();
        assert!(matches!(err, PermError::Parse { ref token, .. } if token == "2"));
        let err = Permutation::parse_cycles("(1,9)", 4).unwrap_err();
        assert!(matches!(err, PermError::Parse { ref token, .. } if token == "9"));
        let err = Permutation::parse_cycles("(1,x)", 4).unwrap_err();
        assert!(matches!(err, PermError::Parse { ref token, .. } if token == "x"));
        assert!(Permutation::parse_cycles("1,2)", 4).is_err());
        assert!(Permutation::parse_cycles("(1,2", 4).is_err());
    }

    #[test]
    fn composition_convention_gives_the_long_cycle() {
        let t0 = p("(1,3,6)(4,5)", 6);
        let t1 = p("(1,2)(3,5)", 6);
        assert_eq!(t0.compose(&t1), Permutation::long_cycle(6));
        let s = Permutation::long_cycle(6);
        assert!(s.compose(&s.inverse()).is_identity());
    }

    #[test]
    fn residue_reflections_multiply_to_the_shift() {
        // i -> -i and i -> -i-1 on Z/k, residue r at point r+1.
        for k in 1..10u32 {
            let a = Permutation::from_images((0..k).map(|i| (k - i) % k).collect()).unwrap();
            let b = Permutation::from_images((0..k).map(|i| (2 * k - i - 1) % k).collect()).unwrap();
            assert_eq!(a.compose(&b), Permutation::long_cycle(k as usize));
        }
    }

    #[test]
    fn dihedral_reflections_compose_to_rotation() {
        // Hexagon: reflection through edge midpoints then through vertices.
        let edge = p("(1,2)(3,6)(4,5)", 6);
        let vertex = p("(2,6)(3,5)", 6);
        let r = vertex.compose(&edge);
        assert_eq!(r.cycle_type(), CycleType::new(vec![6]));
        assert_eq!(r.order(), 6);
    }

    #[test]
    fn cycle_types() {
        assert_eq!(p("(1,3,6)(4,5)", 6).cycle_type().0, vec![3, 2, 1]);
        assert_eq!(Permutation::identity(5).cycle_type().0, vec![1; 5]);
        assert_eq!(p("(1,2,3,4,5)(6,7)", 8).cycle_type().0, vec![5, 2, 1]);
    }

    #[test]
    fn display_round_trips() {
        let x = p("(2,5)(1,3,6)", 6);
        assert_eq!(x.to_string(), "(1,3,6)(2,5)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert_eq!(p(&x.to_string(), 6), x);
    }

    #[test]
    fn no_conjugator_for_the_non_real_pairs() {
        for (a, b) in [("(1,3,6)(4,5)", "(1,2)(3,5)"), ("(5,6)(1,2,3)", "(3,4,6)")] {
            let (a, b) = (p(a, 6), p(b, 6));
            let pairs = [(a.clone(), a.inverse()), (b.clone(), b.inverse())];
            assert_eq!(simultaneous_conjugator(&pairs), None);
        }
    }

    #[test]
    fn conjugator_for_identical_pairs() {
        let x = p("(1,4)(2,5,3)", 6);
        let g = simultaneous_conjugator(&[(x.clone(), x.clone())]).unwrap();
        assert_eq!(x.conjugate_by(&g), x);
    }

    #[test]
    fn conjugator_recovers_a_hidden_relabelling() {
        let x = p("(1,2,3)(4,5)", 7);
        let y = p("(2,6)(1,7)", 7);
        let h = p("(1,5,7)(2,3)", 7);
        let pairs = [(x.clone(), x.conjugate_by(&h)), (y.clone(), y.conjugate_by(&h))];
        let g = simultaneous_conjugator(&pairs).unwrap();
        for (a, b) in &pairs {
            assert_eq!(&a.conjugate_by(&g), b);
        }
    }

    #[test]
    fn closure_sizes() {
        let gens = [p("(1,2)", 5), Permutation::long_cycle(5)];
        assert_eq!(closure(&gens, 5, 1000).unwrap().len(), 120);
        assert_eq!(closure(&[], 4, 10).unwrap().len(), 1);
        let cheb = [p("(1,6)(2,5)(3,4)", 6), p("(2,6)(3,5)", 6)];
        assert_eq!(closure(&cheb, 6, 1000).unwrap().len(), 12);
        let err = closure(&gens, 5, 50).unwrap_err();
        assert_eq!(err.cap, 50);
        assert!(err.partial > 50);
    }

    #[test]
    fn primitivity() {
        assert!(is_primitive(&[p("(1,2)", 5), Permutation::long_cycle(5)], 5));
        // Dihedral group of the square preserves {1,3},{2,4}.
        assert!(!is_primitive(&[p("(1,2,3,4)", 4), p("(2,4)", 4)], 4));
        assert!(!is_primitive(&[p("(1,2)", 4)], 4));
    }

    #[test]
    fn json_form() {
        let x = p("(1,3,6)(4,5)", 6);
        let j = PermutationJson::from(&x);
        assert_eq!(
            serde_json::to_string(&j).unwrap(),
            r#"{"degree":6,"cycles":[[1,3,6],[4,5]]}"#
        );
        assert_eq!(Permutation::try_from(j).unwrap(), x);
    }
}
