//! Monodromy pairs of polynomials whose critical values are `{0, 1}`.
//!
//! A pair `(τ₀, τ₁)` is stored in normal form: `τ₀ ∘ τ₁ = σ = (1,2,…,n)`.
//! The centralizer of `σ` is `⟨σ⟩`, so two normal-form pairs describe the same
//! polynomial class iff they differ by conjugation with a power of `σ`.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{closure, is_transitive, ClosureOverflow, CycleType, PermError, Permutation};

/// Default degree bound for exhaustive enumeration.
pub const DEFAULT_DEGREE_GUARD: usize = 9;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonodromyError {
    #[error("degree {degree} exceeds the enumeration guard {guard}; raise the guard explicitly to continue")]
    DegreeGuard { degree: usize, guard: usize },
    #[error("cycle type {ty} has degree {got}, expected {expected}")]
    TypeDegree {
        ty: CycleType,
        got: usize,
        expected: usize,
    },
    #[error("invalid monodromy pair: {}", .0.join("; "))]
    InvalidPair(Vec<String>),
    #[error("inconsistent branch data: 2 - 2g = {euler} has no non-negative integer solution")]
    InconsistentGenus { euler: i64 },
    #[error(transparent)]
    Perm(#[from] PermError),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonodromyPair {
    pub tau0: Permutation,
    pub tau1: Permutation,
}

impl fmt::Debug for MonodromyPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}; {}>[{}]", self.tau0, self.tau1, self.degree())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonodromyPairJson {
    pub degree: usize,
    pub tau0: Vec<Vec<u32>>,
    pub tau1: Vec<Vec<u32>>,
}

impl From<&MonodromyPair> for MonodromyPairJson {
    fn from(p: &MonodromyPair) -> Self {
        MonodromyPairJson {
            degree: p.degree(),
            tau0: p.tau0.to_cycles_one_based(),
            tau1: p.tau1.to_cycles_one_based(),
        }
    }
}

impl TryFrom<MonodromyPairJson> for MonodromyPair {
    type Error = MonodromyError;

    fn try_from(j: MonodromyPairJson) -> Result<Self, MonodromyError> {
        Ok(MonodromyPair {
            tau0: Permutation::from_cycles(&j.tau0, j.degree)?,
            tau1: Permutation::from_cycles(&j.tau1, j.degree)?,
        })
    }
}

/// Per-invariant verdicts for a candidate pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidityReport {
    pub product_is_n_cycle: bool,
    pub transitive: bool,
    pub deficiency_sum: usize,
    pub deficiency_ok: bool,
    pub reasons: Vec<String>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.product_is_n_cycle && self.transitive && self.deficiency_ok
    }
}

impl MonodromyPair {
    pub fn new(tau0: Permutation, tau1: Permutation) -> Result<Self, MonodromyError> {
        if tau0.degree() != tau1.degree() {
            return Err(PermError::DegreeMismatch {
                left: tau0.degree(),
                right: tau1.degree(),
            }
            .into());
        }
        Ok(MonodromyPair { tau0, tau1 })
    }

    pub fn parse(tau0: &str, tau1: &str, degree: usize) -> Result<Self, MonodromyError> {
        Self::new(
            Permutation::parse_cycles(tau0, degree)?,
            Permutation::parse_cycles(tau1, degree)?,
        )
    }

    pub fn degree(&self) -> usize {
        self.tau0.degree()
    }

    pub fn product(&self) -> Permutation {
        self.tau0.compose(&self.tau1)
    }

    pub fn datum(&self) -> BranchDatum {
        BranchDatum {
            degree: self.degree(),
            type0: self.tau0.cycle_type(),
            type1: self.tau1.cycle_type(),
        }
    }

    pub fn conjugate_by(&self, g: &Permutation) -> MonodromyPair {
        MonodromyPair {
            tau0: self.tau0.conjugate_by(g),
            tau1: self.tau1.conjugate_by(g),
        }
    }

    pub fn swapped(&self) -> MonodromyPair {
        MonodromyPair {
            tau0: self.tau1.clone(),
            tau1: self.tau0.clone(),
        }
    }

    pub fn validate(&self) -> ValidityReport {
        let n = self.degree();
        let product_is_n_cycle = self.product().cycle_count() == 1;
        let transitive = is_transitive(&[self.tau0.clone(), self.tau1.clone()], n);
        let deficiency_sum = (n - self.tau0.cycle_count()) + (n - self.tau1.cycle_count());
        let deficiency_ok = deficiency_sum + 1 == n;
        let mut reasons = Vec::new();
        if !product_is_n_cycle {
            reasons.push(format!(
                "product {} is not an {}-cycle",
                self.product(),
                n
            ));
        }
        if !transitive {
            reasons.push("generated group is not transitive".to_string());
        }
        if !deficiency_ok {
            reasons.push(format!(
                "deficiency sum {} differs from n - 1 = {}",
                deficiency_sum,
                n - 1
            ));
        }
        ValidityReport {
            product_is_n_cycle,
            transitive,
            deficiency_sum,
            deficiency_ok,
            reasons,
        }
    }

    /// Both branch permutations are nontrivial, so 0 and 1 are genuine
    /// critical values (the pair `(σ, 1)` of `zⁿ` fails this).
    pub fn has_two_critical_values(&self) -> bool {
        !self.tau0.is_identity() && !self.tau1.is_identity()
    }

    fn require_valid(&self) -> Result<(), MonodromyError> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(MonodromyError::InvalidPair(report.reasons))
        }
    }

    /// Relabels along the product cycle so the product becomes `σ`.
    ///
    /// The relabelling `h` sends `π^k(1)` to `k+1`; it is the identity on
    /// pairs already in normal form.
    pub fn normalized(&self) -> Result<MonodromyPair, MonodromyError> {
        let n = self.degree();
        let pi = self.product();
        if pi.cycle_count() != 1 {
            return Err(MonodromyError::InvalidPair(vec![format!(
                "product {} is not an {}-cycle",
                pi, n
            )]));
        }
        let mut h = vec![0u32; n];
        let mut x = 0;
        for k in 0..n {
            h[x] = k as u32;
            x = pi.apply(x);
        }
        let h = Permutation::from_images(h)?;
        Ok(self.conjugate_by(&h))
    }

    /// The `⟨σ⟩`-orbit of a normal-form pair, in order of the exponent.
    pub fn sigma_orbit(&self) -> Vec<MonodromyPair> {
        let n = self.degree();
        let sigma = Permutation::long_cycle(n);
        let mut out = Vec::with_capacity(n);
        let mut g = Permutation::identity(n);
        for _ in 0..n.max(1) {
            out.push(self.conjugate_by(&g));
            g = g.compose(&sigma);
        }
        out
    }

    /// Lexicographically least member of the `⟨σ⟩`-orbit.
    pub fn canonical(&self) -> MonodromyPair {
        self.sigma_orbit().into_iter().min().expect("orbit is non-empty")
    }
}

/// Whether two pairs describe the same polynomial class.
pub fn equivalent(p: &MonodromyPair, q: &MonodromyPair) -> Result<bool, MonodromyError> {
    if p.degree() != q.degree() {
        return Ok(false);
    }
    Ok(p.normalized()?.canonical() == q.normalized()?.canonical())
}

/// Riemann–Hurwitz genus of a cover given all of its branch permutations
/// (the monodromy at infinity included).
pub fn genus_of_cover(tuples: &[Permutation], degree: usize) -> Result<u64, MonodromyError> {
    let mut ramification: i64 = 0;
    for p in tuples {
        if p.degree() != degree {
            return Err(PermError::DegreeMismatch {
                left: degree,
                right: p.degree(),
            }
            .into());
        }
        ramification += (degree - p.cycle_count()) as i64;
    }
    let euler = 2 * degree as i64 - ramification;
    if euler % 2 != 0 || euler > 2 {
        return Err(MonodromyError::InconsistentGenus { euler });
    }
    Ok(((2 - euler) / 2) as u64)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BranchDatum {
    pub degree: usize,
    pub type0: CycleType,
    pub type1: CycleType,
}

impl BranchDatum {
    pub fn new(type0: CycleType, type1: CycleType) -> Result<Self, MonodromyError> {
        let degree = type0.degree();
        if type1.degree() != degree {
            return Err(MonodromyError::TypeDegree {
                got: type1.degree(),
                ty: type1,
                expected: degree,
            });
        }
        Ok(BranchDatum {
            degree,
            type0,
            type1,
        })
    }

    pub fn parse(type0: &str, type1: &str) -> Result<Self, MonodromyError> {
        Self::new(CycleType::parse(type0)?, CycleType::parse(type1)?)
    }

    pub fn swapped(&self) -> BranchDatum {
        BranchDatum {
            degree: self.degree,
            type0: self.type1.clone(),
            type1: self.type0.clone(),
        }
    }

    /// Whether the deficiency sum equals `n − 1`.
    pub fn deficiency_ok(&self) -> bool {
        self.type0.deficiency() + self.type1.deficiency() + 1 == self.degree
    }
}

impl fmt::Display for BranchDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.type0, self.type1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PolynomialClassKind {
    Chebycheff,
    Belyi,
    Other,
}

impl fmt::Display for PolynomialClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PolynomialClassKind::Chebycheff => "Chebycheff",
            PolynomialClassKind::Belyi => "Belyi",
            PolynomialClassKind::Other => "Other",
        };
        f.write_str(s)
    }
}

/// Kind of a branch datum, read off the two cycle types.
///
/// Data that fit both descriptions (such as `(2,1,1)/(2,2)`, where `T₄` and
/// `P₂,₂` coincide up to affine change) are reported as Belyi.
pub fn classify(d: &BranchDatum) -> PolynomialClassKind {
    let all_twos = |t: &CycleType| t.nontrivial().all(|l| l == 2);
    let single_transposition = |t: &CycleType| t.nontrivial().eq([2]);
    let at_most_two = |t: &CycleType| t.nontrivial().count() <= 2;
    if (single_transposition(&d.type0) && at_most_two(&d.type1))
        || (single_transposition(&d.type1) && at_most_two(&d.type0))
    {
        PolynomialClassKind::Belyi
    } else if all_twos(&d.type0) && all_twos(&d.type1) {
        PolynomialClassKind::Chebycheff
    } else {
        PolynomialClassKind::Other
    }
}

/// All permutations of degree `n` with the given cycle type, in a fixed order.
pub fn permutations_of_type(t: &CycleType) -> Vec<Permutation> {
    let n = t.degree();
    let mut lengths: Vec<(usize, usize)> = Vec::new();
    for &l in t.parts() {
        match lengths.last_mut() {
            Some((len, count)) if *len == l => *count += 1,
            _ => lengths.push((l, 1)),
        }
    }
    let mut out = Vec::new();
    let mut images = vec![u32::MAX; n];
    let mut cycle = Vec::new();
    fill_cycles(&mut images, &mut lengths, &mut cycle, &mut out);
    out
}

fn fill_cycles(
    images: &mut [u32],
    lengths: &mut [(usize, usize)],
    cycle: &mut Vec<usize>,
    out: &mut Vec<Permutation>,
) {
    let Some(start) = images.iter().position(|&i| i == u32::MAX) else {
        out.push(Permutation::from_images(images.to_vec()).expect("complete bijection"));
        return;
    };
    for li in 0..lengths.len() {
        if lengths[li].1 == 0 {
            continue;
        }
        let len = lengths[li].0;
        lengths[li].1 -= 1;
        cycle.clear();
        cycle.push(start);
        // Mark the start so it is not chosen again inside its own cycle.
        images[start] = start as u32;
        extend_cycle(images, lengths, cycle, len, out);
        images[start] = u32::MAX;
        lengths[li].1 += 1;
    }
}

fn extend_cycle(
    images: &mut [u32],
    lengths: &mut [(usize, usize)],
    cycle: &mut Vec<usize>,
    len: usize,
    out: &mut Vec<Permutation>,
) {
    if cycle.len() == len {
        let closing = *cycle.last().unwrap();
        let start = cycle[0];
        let saved = images[closing];
        images[closing] = start as u32;
        let snapshot = cycle.clone();
        fill_cycles(images, lengths, cycle, out);
        *cycle = snapshot;
        images[closing] = saved;
        return;
    }
    for next in 0..images.len() {
        if images[next] != u32::MAX {
            continue;
        }
        let prev = *cycle.last().unwrap();
        let saved_prev = images[prev];
        images[prev] = next as u32;
        // Placeholder so `next` counts as used until its own image is set.
        images[next] = next as u32;
        cycle.push(next);
        extend_cycle(images, lengths, cycle, len, out);
        cycle.pop();
        images[next] = u32::MAX;
        images[prev] = saved_prev;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub datum: BranchDatum,
    /// Transitive pairs with product `σ`, sorted.
    pub pairs: Vec<MonodromyPair>,
    /// Pairs with product `σ` whose group is not transitive.
    pub non_transitive: Vec<MonodromyPair>,
}

/// All `(τ₀, τ₁)` of the given types with `τ₀ ∘ τ₁ = σ`.
///
/// Every `τ₀` of type `type0` fixes `τ₁ = τ₀⁻¹ ∘ σ`; the candidates for `τ₀`
/// are checked in parallel and the results sorted.
pub fn enumerate_factorizations(
    d: &BranchDatum,
    guard: usize,
) -> Result<Enumeration, MonodromyError> {
    if d.degree > guard {
        return Err(MonodromyError::DegreeGuard {
            degree: d.degree,
            guard,
        });
    }
    BranchDatum::new(d.type0.clone(), d.type1.clone())?;
    let empty = Enumeration {
        datum: d.clone(),
        pairs: Vec::new(),
        non_transitive: Vec::new(),
    };
    if !d.deficiency_ok() {
        return Ok(empty);
    }
    let n = d.degree;
    let sigma = Permutation::long_cycle(n);
    let candidates = permutations_of_type(&d.type0);
    let mut found: Vec<(bool, MonodromyPair)> = candidates
        .par_iter()
        .filter_map(|tau0| {
            let tau1 = tau0.inverse().compose(&sigma);
            (tau1.cycle_type() == d.type1).then(|| {
                let transitive = is_transitive(&[tau0.clone(), tau1.clone()], n);
                (
                    transitive,
                    MonodromyPair {
                        tau0: tau0.clone(),
                        tau1,
                    },
                )
            })
        })
        .collect();
    found.sort();
    let mut out = empty;
    for (transitive, pair) in found {
        if transitive {
            out.pairs.push(pair);
        } else {
            out.non_transitive.push(pair);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSummary {
    pub representative: MonodromyPair,
    pub orbit_size: usize,
}

/// `⟨σ⟩`-orbits of the factorizations, sorted by canonical representative.
pub fn enumerate_classes(
    d: &BranchDatum,
    guard: usize,
) -> Result<Vec<ClassSummary>, MonodromyError> {
    let e = enumerate_factorizations(d, guard)?;
    Ok(classes_of(&e.pairs))
}

pub fn classes_of(pairs: &[MonodromyPair]) -> Vec<ClassSummary> {
    let mut remaining: BTreeSet<MonodromyPair> = pairs.iter().cloned().collect();
    let mut out = Vec::new();
    while let Some(first) = remaining.pop_first() {
        let orbit: BTreeSet<MonodromyPair> = first.sigma_orbit().into_iter().collect();
        for q in &orbit {
            remaining.remove(q);
        }
        out.push(ClassSummary {
            representative: orbit.first().cloned().expect("orbit is non-empty"),
            orbit_size: orbit.len(),
        });
    }
    out.sort_by(|a, b| a.representative.cmp(&b.representative));
    out
}

/// `(τ₀⁻¹, τ₁⁻¹)` brought back to normal form: the monodromy of the complex
/// conjugate polynomial.
pub fn conjugate_pair(p: &MonodromyPair) -> Result<MonodromyPair, MonodromyError> {
    MonodromyPair {
        tau0: p.tau0.inverse(),
        tau1: p.tau1.inverse(),
    }
    .normalized()
}

/// Whether the class of `p` is fixed by complex conjugation; with `extended`,
/// also accepts the class of the swapped pair (the polynomial `1 − P`).
pub fn is_real_class(p: &MonodromyPair, extended: bool) -> Result<bool, MonodromyError> {
    p.require_valid()?;
    let target = conjugate_pair(p)?.canonical();
    if p.normalized()?.canonical() == target {
        return Ok(true);
    }
    if extended {
        return Ok(p.swapped().normalized()?.canonical() == target);
    }
    Ok(false)
}

pub fn monodromy_group_order(p: &MonodromyPair, cap: usize) -> Result<usize, ClosureOverflow> {
    closure(&[p.tau0.clone(), p.tau1.clone()], p.degree(), cap).map(|s| s.len())
}

/// Partitions of `n` in non-increasing order, lexicographically descending.
pub fn partitions(n: usize) -> Vec<CycleType> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<CycleType>) {
        if rest == 0 {
            out.push(CycleType(cur.clone()));
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            rec(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DatumSummary {
    pub datum: BranchDatum,
    pub kind: PolynomialClassKind,
    pub classes: usize,
    pub factorizations: usize,
}

/// Every ordered branch datum of degree `n` with both types nontrivial that
/// admits at least one class.
pub fn exhaustive_scan(n: usize, guard: usize) -> Result<Vec<DatumSummary>, MonodromyError> {
    let parts: Vec<CycleType> = partitions(n)
        .into_iter()
        .filter(|t| !t.is_identity())
        .collect();
    let mut out = Vec::new();
    for t0 in &parts {
        for t1 in &parts {
            let d = BranchDatum::new(t0.clone(), t1.clone())?;
            if !d.deficiency_ok() {
                continue;
            }
            let e = enumerate_factorizations(&d, guard)?;
            if e.pairs.is_empty() {
                continue;
            }
            out.push(DatumSummary {
                kind: classify(&d),
                classes: classes_of(&e.pairs).len(),
                factorizations: e.pairs.len(),
                datum: d,
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table6Row {
    pub case: &'static str,
    pub datum: BranchDatum,
    pub reference: usize,
    pub count: usize,
    pub swapped_count: usize,
    pub matches: bool,
}

/// The six degree-6 branch data with the known numbers of normalized
/// polynomials; each is compared with the raw factorization count, and the
/// swapped datum is also counted so a 0↔1 relabelling is visible.
pub fn table6() -> Vec<Table6Row> {
    const CASES: [(&str, &str, &str, usize); 6] = [
        ("I", "2,2,1,1", "2,2,2", 3),
        ("II", "2,2,1,1", "3,2,1", 18),
        ("III", "2,2,1,1", "4,1,1", 9),
        ("IV", "3,1,1,1", "2,2,2", 2),
        ("V", "3,1,1,1", "3,2,1", 12),
        ("VI", "3,1,1,1", "4,1,1", 6),
    ];
    CASES
        .iter()
        .map(|&(case, t0, t1, reference)| {
            let datum = BranchDatum::parse(t0, t1).expect("fixed data");
            let count = enumerate_factorizations(&datum, 6)
                .expect("degree 6")
                .pairs
                .len();
            let swapped_count = enumerate_factorizations(&datum.swapped(), 6)
                .expect("degree 6")
                .pairs
                .len();
            Table6Row {
                case,
                matches: count == reference || swapped_count == reference,
                datum,
                reference,
                count,
                swapped_count,
            }
        })
        .collect()
}

/// The Chebycheff class of degree `n`: `τ₀` and `τ₁` are the two reflection
/// families of the dihedral group with `τ₀ ∘ τ₁ = σ`.
pub fn chebycheff_pair(n: usize) -> MonodromyPair {
    let n32 = n as u32;
    let tau1 = Permutation::from_images((0..n32).map(|i| (n32 - 1 - i) % n32.max(1)).collect())
        .expect("reflection");
    let tau0 = Permutation::long_cycle(n).compose(&tau1.inverse());
    MonodromyPair { tau0, tau1 }
}

/// The class of `z^m (1−z)^r` scaled to critical values `{0,1}`: `τ₀` has
/// type `(m, r)` and `τ₁` is a transposition.
pub fn belyi_pair(m: usize, r: usize) -> MonodromyPair {
    let n = m + r;
    let sigma = Permutation::long_cycle(n);
    let tau1 = if n >= 2 {
        Permutation::from_cycles(&[vec![1, m as u32 + 1]], n).expect("transposition")
    } else {
        Permutation::identity(n)
    };
    let tau0 = sigma.compose(&tau1.inverse());
    MonodromyPair { tau0, tau1 }
}

/// A random genus-zero pair of degree `n` in normal form.
///
/// `τ₀` is the permutation of a random non-crossing partition of the points
/// in the order of `σ`, so `τ₁ = τ₀⁻¹ ∘ σ` completes a minimal factorization.
pub fn random_valid_pair<R: Rng + ?Sized>(n: usize, rng: &mut R) -> MonodromyPair {
    fn split(points: &[u32], rng: &mut (impl Rng + ?Sized), blocks: &mut Vec<Vec<u32>>) {
        let Some((&first, rest)) = points.split_first() else {
            return;
        };
        let mut block = vec![first];
        let mut gap = Vec::new();
        for &p in rest {
            if rng.gen_bool(0.5) {
                split(&gap, rng, blocks);
                gap.clear();
                block.push(p);
            } else {
                gap.push(p);
            }
        }
        split(&gap, rng, blocks);
        blocks.push(block);
    }
    let points: Vec<u32> = (1..=n as u32).collect();
    let mut blocks = Vec::new();
    split(&points, rng, &mut blocks);
    let tau0 = Permutation::from_cycles(&blocks, n).expect("disjoint blocks");
    let tau1 = tau0.inverse().compose(&Permutation::long_cycle(n));
    MonodromyPair { tau0, tau1 }
}
