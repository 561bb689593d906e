//! Beauville structures on finite groups.
//!
//! `Σ(a, c)` is a union of conjugacy classes, so it is handled as the set of
//! class keys of the powers of `a`, `c` and `ac`. Every family in
//! [`crate::groups`] has complete class keys, which makes this exact.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use num_integer::Integer;
use num_rational::Ratio;
use rand::{Rng, RngCore};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::groups::{
    is_prime, AutSupply, FiniteGroup, Generation, GroupError, H4Elem, H4Group, SymGroup,
    DEFAULT_BUDGET,
};
use crate::perm::Permutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BeauvilleError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("inconsistent genus input: {0}")]
    Genus(String),
    #[error("{0} is not a subgroup of index 2")]
    NotIndexTwo(String),
    #[error("preconditions violated: {}", .0.join("; "))]
    Preconditions(Vec<String>),
    #[error("malformed structure: {0}")]
    Structure(String),
}

/// `(ord(a), ord(c), ord(ac))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TypeTriple {
    pub r: u64,
    pub s: u64,
    pub t: u64,
}

impl TypeTriple {
    pub fn new(r: u64, s: u64, t: u64) -> Self {
        TypeTriple { r, s, t }
    }

    /// `1/r + 1/s + 1/t`.
    pub fn mu(&self) -> Ratio<u64> {
        Ratio::new(1, self.r) + Ratio::new(1, self.s) + Ratio::new(1, self.t)
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.mu() < Ratio::from_integer(1)
    }

    pub fn orders(&self) -> [u64; 3] {
        [self.r, self.s, self.t]
    }

    pub fn order_set(&self) -> BTreeSet<u64> {
        self.orders().into_iter().collect()
    }

    /// `ord(a) < ord(ac) < ord(c)`.
    pub fn order_chain(&self) -> bool {
        self.r < self.t && self.t < self.s
    }

    pub fn pairwise_distinct(&self) -> bool {
        self.r != self.s && self.s != self.t && self.r != self.t
    }

    /// Parses `"r,s,t"`.
    pub fn parse(text: &str) -> Option<Self> {
        let v: Vec<u64> = text
            .trim_matches(|c| c == '(' || c == ')')
            .split(',')
            .map(|x| x.trim().parse().ok())
            .collect::<Option<_>>()?;
        match v.as_slice() {
            [r, s, t] if *r > 0 && *s > 0 && *t > 0 => Some(TypeTriple::new(*r, *s, *t)),
            _ => None,
        }
    }
}

impl fmt::Display for TypeTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.r, self.s, self.t)
    }
}

pub fn type_of<G: FiniteGroup>(g: &G, a: &G::Elem, c: &G::Elem) -> TypeTriple {
    TypeTriple::new(
        g.element_order(a),
        g.element_order(c),
        g.element_order(&g.compose(a, c)),
    )
}

/// The type of `(a, c)`, its `μ`, and whether it is hyperbolic.
pub fn type_and_mu<G: FiniteGroup>(g: &G, a: &G::Elem, c: &G::Elem) -> (TypeTriple, Ratio<u64>, bool) {
    let t = type_of(g, a, c);
    (t, t.mu(), t.is_hyperbolic())
}

/// Genus of the triangle curve with group of the given order and type:
/// `1 + (|G|/2)(1 − 1/r − 1/s − 1/t)`.
pub fn genus_triangle(order: u64, t: TypeTriple) -> Result<u64, BeauvilleError> {
    if let Some(x) = t.orders().into_iter().find(|x| order % x != 0) {
        return Err(BeauvilleError::Genus(format!("{x} does not divide {order}")));
    }
    let two_g_minus_two = Ratio::from_integer(i128::from(order))
        * (Ratio::from_integer(1) - Ratio::new(1, i128::from(t.r)) - Ratio::new(1, i128::from(t.s))
            - Ratio::new(1, i128::from(t.t)));
    let g2 = two_g_minus_two + Ratio::from_integer(2);
    if !g2.is_integer() || g2.to_integer().is_odd() || g2.to_integer() < 0 {
        return Err(BeauvilleError::Genus(format!(
            "2g = {g2} for |G| = {order}, type {t}"
        )));
    }
    Ok((g2.to_integer() / 2) as u64)
}

/// Class keys of all powers of `a`, `c` and `ac`.
pub fn sigma_keys<G: FiniteGroup>(g: &G, a: &G::Elem, c: &G::Elem) -> BTreeSet<G::ClassKey> {
    let mut keys = BTreeSet::new();
    for x in [a.clone(), c.clone(), g.compose(a, c)] {
        let mut y = g.identity();
        for _ in 0..g.element_order(&x) {
            keys.insert(g.class_key(&y));
            y = g.compose(&y, &x);
        }
    }
    keys
}

/// `Σ(a, c)` either listed or as a class-key oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SigmaSet<E, K> {
    Explicit(BTreeSet<E>),
    Oracle(BTreeSet<K>),
}

impl<E: Ord, K: Ord> SigmaSet<E, K> {
    pub fn len(&self) -> Option<usize> {
        match self {
            SigmaSet::Explicit(s) => Some(s.len()),
            SigmaSet::Oracle(_) => None,
        }
    }
}

/// `Σ(a, c)`, listed when `|G| ≤ budget`.
pub fn sigma_set<G: FiniteGroup>(
    g: &G,
    a: &G::Elem,
    c: &G::Elem,
    budget: u64,
) -> SigmaSet<G::Elem, G::ClassKey> {
    let keys = sigma_keys(g, a, c);
    if g.order() > budget {
        return SigmaSet::Oracle(keys);
    }
    let mut out = BTreeSet::new();
    g.for_each_element(&mut |x| {
        if keys.contains(&g.class_key(x)) {
            out.insert(x.clone());
        }
    });
    SigmaSet::Explicit(out)
}

/// `(a₁, c₁; a₂, c₂)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Structure<E> {
    pub a1: E,
    pub c1: E,
    pub a2: E,
    pub c2: E,
}

impl<E: Clone> Structure<E> {
    pub fn pairs(&self) -> [(E, E); 2] {
        [(self.a1.clone(), self.c1.clone()), (self.a2.clone(), self.c2.clone())]
    }
}

impl<E> Structure<E> {
    pub fn to_json<G: FiniteGroup<Elem = E>>(&self, g: &G) -> Value {
        json!({
            "group": g.spec(),
            "a1": g.encode(&self.a1),
            "c1": g.encode(&self.c1),
            "a2": g.encode(&self.a2),
            "c2": g.encode(&self.c2),
        })
    }

    pub fn from_json<G: FiniteGroup<Elem = E>>(g: &G, v: &Value) -> Result<Self, BeauvilleError> {
        let field = |k: &str| {
            v.get(k)
                .ok_or_else(|| BeauvilleError::Structure(format!("missing `{k}`")))
                .and_then(|x| g.decode(x).map_err(BeauvilleError::from))
        };
        Ok(Structure {
            a1: field("a1")?,
            c1: field("c1")?,
            a2: field("a2")?,
            c2: field("c2")?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnmixedFailure<E> {
    /// Pair `pair` (1 or 2) does not provably generate.
    NotGenerating { pair: usize, answer: Generation },
    /// A nontrivial element lying in both Σ-sets, given as a power of `a₁`,
    /// `c₁` or `a₁c₁`.
    CommonElement { element: E, word: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnmixedVerdict<E> {
    pub valid: bool,
    pub types: [TypeTriple; 2],
    pub failure: Option<UnmixedFailure<E>>,
}

fn check_members<G: FiniteGroup>(g: &G, xs: &[&G::Elem]) -> Result<(), BeauvilleError> {
    if xs.iter().all(|x| g.contains(x)) {
        Ok(())
    } else {
        Err(GroupError::NotMember(g.spec()).into())
    }
}

/// Checks generation by both pairs and `Σ(a₁,c₁) ∩ Σ(a₂,c₂) = {1}`.
pub fn is_unmixed<G: FiniteGroup>(
    g: &G,
    v: &Structure<G::Elem>,
    budget: u64,
) -> Result<UnmixedVerdict<G::Elem>, BeauvilleError> {
    check_members(g, &[&v.a1, &v.c1, &v.a2, &v.c2])?;
    let types = [type_of(g, &v.a1, &v.c1), type_of(g, &v.a2, &v.c2)];
    let fail = |f| Ok(UnmixedVerdict { valid: false, types, failure: Some(f) });
    for (i, (a, c)) in v.pairs().iter().enumerate() {
        let answer = g.generates(&[a.clone(), c.clone()], budget);
        if answer != Generation::Yes {
            return fail(UnmixedFailure::NotGenerating { pair: i + 1, answer });
        }
    }
    let sigma2 = sigma_keys(g, &v.a2, &v.c2);
    let id_key = g.class_key(&g.identity());
    for (name, x) in [("a1", v.a1.clone()), ("c1", v.c1.clone()), ("a1c1", g.compose(&v.a1, &v.c1))] {
        let mut y = x.clone();
        for i in 1..g.element_order(&x) {
            let key = g.class_key(&y);
            if key != id_key && sigma2.contains(&key) {
                return fail(UnmixedFailure::CommonElement {
                    element: y,
                    word: format!("{name}^{i}"),
                });
            }
            y = g.compose(&y, &x);
        }
    }
    Ok(UnmixedVerdict { valid: true, types, failure: None })
}

/// Knobs for [`search_unmixed`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    pub type1: Option<TypeTriple>,
    pub type2: Option<TypeTriple>,
    /// Largest number of `(a, c)` pairs examined.
    pub max_pairs: u64,
    pub generation_budget: u64,
    /// Draw this many `c` per class of `a` from a seeded walk instead of
    /// enumerating `G`.
    pub sample: Option<(u64, usize)>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            type1: None,
            type2: None,
            max_pairs: 5_000_000,
            generation_budget: DEFAULT_BUDGET,
            sample: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<E> {
    Found {
        structure: Structure<E>,
        types: [TypeTriple; 2],
        pairs_examined: u64,
    },
    /// Every pair was examined and no structure exists.
    Exhausted { pairs_examined: u64, buckets: usize },
    /// Stopped short of a proof either way.
    BudgetExceeded { pairs_examined: u64, reason: String },
}

/// A product of random generators and inverses; not uniform.
pub fn random_walk_element<G: FiniteGroup>(g: &G, rng: &mut dyn RngCore) -> G::Elem {
    let gens = g.generators();
    let mut x = g.identity();
    if gens.is_empty() {
        return x;
    }
    for _ in 0..4 * (gens.len() + 10) {
        let s = &gens[rng.gen_range(0..gens.len())];
        x = if rng.gen_bool(0.5) {
            g.compose(&x, s)
        } else {
            g.compose(&x, &g.invert(s))
        };
    }
    x
}

type BucketKey = (FixedBitSet, TypeTriple);

/// Looks for an unmixed structure with `a` ranging over class
/// representatives and `c` over the whole group.
///
/// Pairs are bucketed by `(Σ, type)`; a structure is a pair of buckets with
/// disjoint Σ that both contain a generating pair. The answer does not
/// depend on the number of threads.
pub fn search_unmixed<G: FiniteGroup>(g: &G, opts: &SearchOptions) -> SearchOutcome<G::Elem> {
    let classes = g.classes();
    let class_index: HashMap<G::ClassKey, usize> =
        classes.iter().enumerate().map(|(i, c)| (c.key.clone(), i)).collect();
    let reps: Vec<G::Elem> = classes.iter().map(|c| c.representative.clone()).collect();
    let (cs, exhaustive): (Vec<G::Elem>, bool) = match opts.sample {
        Some((seed, count)) => {
            use rand::SeedableRng;
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            ((0..count).map(|_| random_walk_element(g, &mut rng)).collect(), false)
        }
        None => {
            if (reps.len() as u64).saturating_mul(g.order()) > opts.max_pairs {
                return SearchOutcome::BudgetExceeded {
                    pairs_examined: 0,
                    reason: format!(
                        "{} pairs exceed the limit of {}; pass a seed to sample",
                        reps.len() as u64 * g.order(),
                        opts.max_pairs
                    ),
                };
            }
            (g.elements(), true)
        }
    };
    let total = (reps.len() * cs.len()) as u64;
    let nclasses = classes.len();
    let pair_of = |i: usize| (&reps[i / cs.len()], &cs[i % cs.len()]);
    let wanted = |t: &TypeTriple| match (&opts.type1, &opts.type2) {
        (None, None) => true,
        (a, b) => Some(t) == a.as_ref() || Some(t) == b.as_ref(),
    };

    let mut buckets: Vec<(BucketKey, Vec<usize>)> = (0..total as usize)
        .into_par_iter()
        .fold(HashMap::<BucketKey, Vec<usize>>::new, |mut acc, i| {
            let (a, c) = pair_of(i);
            let t = type_of(g, a, c);
            if t.is_hyperbolic() && wanted(&t) {
                let mut bits = FixedBitSet::with_capacity(nclasses);
                for key in sigma_keys(g, a, c) {
                    bits.insert(class_index[&key]);
                }
                acc.entry((bits, t)).or_default().push(i);
            }
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, mut v) in b {
                a.entry(k).or_default().append(&mut v);
            }
            a
        })
        .into_iter()
        .map(|(k, mut v)| {
            v.sort_unstable();
            (k, v)
        })
        .collect();
    buckets.sort_by_key(|(_, v)| v[0]);

    let id_class = class_index[&g.class_key(&g.identity())];
    let undetermined = std::sync::atomic::AtomicBool::new(false);
    let generating: Vec<OnceLock<Option<usize>>> = (0..buckets.len()).map(|_| OnceLock::new()).collect();
    let generator_of = |b: usize| -> Option<usize> {
        *generating[b].get_or_init(|| {
            buckets[b].1.iter().copied().find(|&i| {
                let (a, c) = pair_of(i);
                match g.generates(&[a.clone(), c.clone()], opts.generation_budget) {
                    Generation::Yes => true,
                    Generation::No => false,
                    Generation::Unknown => {
                        undetermined.store(true, std::sync::atomic::Ordering::Relaxed);
                        false
                    }
                }
            })
        })
    };
    let disjoint = |x: &FixedBitSet, y: &FixedBitSet| x.intersection(y).all(|k| k == id_class);
    let first_type = |t: &TypeTriple| opts.type1.as_ref().map_or(true, |w| w == t);
    let second_type = |t: &TypeTriple| opts.type2.as_ref().map_or(true, |w| w == t);
    let unordered = opts.type1.is_none() && opts.type2.is_none();

    let found = (0..buckets.len()).into_par_iter().find_map_first(|i| {
        let ((bi, ti), _) = &buckets[i];
        if !first_type(ti) {
            return None;
        }
        let start = if unordered { i + 1 } else { 0 };
        let mut have_i = None;
        for j in start..buckets.len() {
            let ((bj, tj), _) = &buckets[j];
            if j == i || !second_type(tj) || !disjoint(bi, bj) {
                continue;
            }
            let pi = *have_i.get_or_insert_with(|| generator_of(i));
            let pi = pi?;
            if let Some(pj) = generator_of(j) {
                return Some((pi, pj));
            }
        }
        None
    });
    match found {
        Some((p1, p2)) => {
            let (a1, c1) = pair_of(p1);
            let (a2, c2) = pair_of(p2);
            let structure = Structure {
                a1: a1.clone(),
                c1: c1.clone(),
                a2: a2.clone(),
                c2: c2.clone(),
            };
            let types = [type_of(g, a1, c1), type_of(g, a2, c2)];
            SearchOutcome::Found {
                structure,
                types,
                pairs_examined: total,
            }
        }
        None if exhaustive && !undetermined.into_inner() => SearchOutcome::Exhausted {
            pairs_examined: total,
            buckets: buckets.len(),
        },
        None => SearchOutcome::BudgetExceeded {
            pairs_examined: total,
            reason: if exhaustive {
                "some generation checks were undecided".to_string()
            } else {
                "sampled search found nothing".to_string()
            },
        },
    }
}

/// Abelian groups with an unmixed structure are exactly `(ℤ/n)²` with
/// `gcd(n, 6) = 1`.
pub fn abelian_criterion(n: u64) -> bool {
    n > 1 && n.gcd(&6) == 1
}

/// `(G⁰; a, c; g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedQuadruple<E> {
    pub a: E,
    pub c: E,
    pub g: E,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MixedVerdict {
    pub valid: bool,
    /// Conditions i to iv in order.
    pub conditions: [bool; 4],
    pub witnesses: Vec<String>,
}

/// Checks that `g0` is a subgroup of `g` of index 2: its generators lie in
/// `g` and its order is half of `|G|`.
pub fn check_index_two<G, G0>(g: &G, g0: &G0) -> Result<(), String>
where
    G: FiniteGroup,
    G0: FiniteGroup<Elem = G::Elem>,
{
    if let Some(s) = g0.generators().iter().find(|s| !g.contains(s)) {
        return Err(format!("generator {} is not in {}", g0.encode(s), g.spec()));
    }
    if 2 * g0.order() != g.order() {
        return Err(format!("|G0| = {} and |G| = {}", g0.order(), g.order()));
    }
    Ok(())
}

/// Checks conditions i to iv of a mixed quadruple.
///
/// `Σ` is formed with `G⁰`-conjugation here: a `G`-conjugation invariant
/// `Σ(a, c)` would equal `Σ(gag⁻¹, gcg⁻¹)`, and condition iv could never hold.
pub fn is_mixed<G, G0>(
    g: &G,
    g0: &G0,
    m: &MixedQuadruple<G::Elem>,
    budget: u64,
) -> Result<MixedVerdict, BeauvilleError>
where
    G: FiniteGroup,
    G0: FiniteGroup<Elem = G::Elem>,
{
    check_members(g, &[&m.a, &m.c, &m.g])?;
    check_index_two(g, g0).map_err(|w| BeauvilleError::NotIndexTwo(format!("{}: {w}", g0.spec())))?;
    let mut witnesses = Vec::new();

    let in_g0 = g0.contains(&m.a) && g0.contains(&m.c);
    let sub = if in_g0 {
        g0.subgroup_order(&[m.a.clone(), m.c.clone()], budget)
    } else {
        None
    };
    let cond1 = in_g0 && sub == Some(g0.order());
    if !cond1 {
        witnesses.push(match (in_g0, sub) {
            (false, _) => "i: a or c lies outside G0".to_string(),
            (true, Some(k)) => format!("i: <a,c> has order {k}, not {}", g0.order()),
            (true, None) => format!("i: <a,c> exceeds the budget {budget}"),
        });
    }

    let cond2 = !g0.contains(&m.g);
    if !cond2 {
        witnesses.push("ii: g lies in G0".to_string());
    }

    let sigma = sigma_keys(g0, &m.a, &m.c);
    let mut cond3_witness = None;
    if cond1 && cond2 {
        g0.for_each_element(&mut |gamma| {
            if cond3_witness.is_some() {
                return;
            }
            let x = g.compose(&m.g, gamma);
            let sq = g.compose(&x, &x);
            if sigma.contains(&g0.class_key(&sq)) {
                cond3_witness = Some(format!(
                    "iii: gamma = {} gives (g gamma)^2 = {} in Sigma(a,c)",
                    g.encode(gamma),
                    g.encode(&sq)
                ));
            }
        });
    } else {
        cond3_witness = Some("iii: not checked since i or ii fails".to_string());
    }
    let cond3 = cond3_witness.is_none();
    witnesses.extend(cond3_witness);

    let ga = g.conjugate(&m.a, &m.g);
    let gc = g.conjugate(&m.c, &m.g);
    let cond4 = if in_g0 && g0.contains(&ga) && g0.contains(&gc) {
        let sigma_g = sigma_keys(g0, &ga, &gc);
        let id_key = g0.class_key(&g0.identity());
        let common: Vec<&G0::ClassKey> =
            sigma.intersection(&sigma_g).filter(|k| **k != id_key).collect();
        if let Some(first) = common.first() {
            witnesses.push(format!("iv: {} common nontrivial classes, first {first:?}", common.len()));
        }
        common.is_empty()
    } else {
        witnesses.push("iv: conjugates of a, c leave G0".to_string());
        false
    };
    let conditions = [cond1, cond2, cond3, cond4];
    Ok(MixedVerdict {
        valid: conditions.iter().all(|&b| b),
        conditions,
        witnesses,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub index: u8,
    pub name: &'static str,
    pub holds: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H4LemmaReport {
    pub hypotheses: Vec<Hypothesis>,
    pub types: [TypeTriple; 2],
    /// `a = (a₁, a₂, 2)`, `c = (c₁, c₂, 2)`, `g = (1, 1, 1)`.
    pub quadruple: Option<MixedQuadruple<H4Elem>>,
    pub mixed: Option<MixedVerdict>,
}

impl H4LemmaReport {
    pub fn holds(&self) -> bool {
        self.hypotheses.iter().all(|h| h.holds)
    }
}

fn prime_factors(mut n: u64) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    let mut d = 2;
    while d * d <= n {
        while n % d == 0 {
            out.insert(d);
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        out.insert(n);
    }
    out
}

/// Checks the four hypotheses on `(a₁, c₁, a₂, c₂)` in `H`. When they hold,
/// assembles the quadruple in `H₍₄₎` and, if `verify`, runs [`is_mixed`] on it
/// with `G⁰ = H₍₂₎`.
pub fn h4_lemma_check<H: FiniteGroup>(
    h4: &H4Group<H>,
    a1: &H::Elem,
    c1: &H::Elem,
    a2: &H::Elem,
    c2: &H::Elem,
    verify: bool,
) -> Result<H4LemmaReport, BeauvilleError> {
    let h = h4.inner();
    check_members(h, &[a1, c1, a2, c2])?;
    let t1 = type_of(h, a1, c1);
    let t2 = type_of(h, a2, c2);
    let mut hyps = Vec::new();

    let odd: Vec<String> = [("a1", t1.r), ("c1", t1.s)]
        .iter()
        .filter(|(_, o)| o % 2 == 1)
        .map(|(n, o)| format!("ord({n}) = {o} is odd"))
        .collect();
    hyps.push(Hypothesis {
        index: 1,
        name: "orders of a1, c1 even",
        holds: odd.is_empty(),
        witness: (!odd.is_empty()).then(|| odd.join(", ")),
    });

    let squares = [h.compose(a1, a1), h.compose(a1, c1), h.compose(c1, c1)];
    let gen2 = h.generates(&squares, DEFAULT_BUDGET);
    hyps.push(Hypothesis {
        index: 2,
        name: "a1^2, a1c1, c1^2 generate H",
        holds: gen2 == Generation::Yes,
        witness: (gen2 != Generation::Yes).then(|| match h.subgroup_order(&squares, DEFAULT_BUDGET) {
            Some(k) => format!("they generate a subgroup of order {k}"),
            None => "generation undecided".to_string(),
        }),
    });

    let gen3 = h.generates(&[a2.clone(), c2.clone()], DEFAULT_BUDGET);
    hyps.push(Hypothesis {
        index: 3,
        name: "a2, c2 generate H",
        holds: gen3 == Generation::Yes,
        witness: (gen3 != Generation::Yes).then(|| match h.subgroup_order(&[a2.clone(), c2.clone()], DEFAULT_BUDGET) {
            Some(k) => format!("they generate a subgroup of order {k}"),
            None => "generation undecided".to_string(),
        }),
    });

    let p1 = t1.r * t1.s * t1.t;
    let p2 = t2.r * t2.s * t2.t;
    let shared: Vec<u64> = prime_factors(p1).intersection(&prime_factors(p2)).copied().collect();
    hyps.push(Hypothesis {
        index: 4,
        name: "order products coprime",
        holds: shared.is_empty(),
        witness: (!shared.is_empty()).then(|| format!("gcd({p1}, {p2}) divisible by {shared:?}")),
    });

    let holds = hyps.iter().all(|x| x.holds);
    let quadruple = holds.then(|| MixedQuadruple {
        a: h4.lift(a1, a2, 2).expect("members of H"),
        c: h4.lift(c1, c2, 2).expect("members of H"),
        g: h4.swap_element(),
    });
    let mixed = match (&quadruple, verify) {
        (Some(q), true) => Some(is_mixed(h4, &h4.h2(), q, h4.order())?),
        _ => None,
    };
    Ok(H4LemmaReport {
        hypotheses: hyps,
        types: [t1, t2],
        quadruple,
        mixed,
    })
}

/// First `(a₁, c₁, a₂, c₂)` in `H` meeting the four hypotheses, with `a₁` and
/// `a₂` class representatives and `c₁`, `c₂` in element order.
pub fn search_h4_quadruple<H: FiniteGroup>(h: &H) -> Option<Structure<H::Elem>> {
    let reps: Vec<H::Elem> = h.classes().into_iter().map(|c| c.representative).collect();
    let elems = h.elements();
    let orders: Vec<u64> = elems.iter().map(|x| h.element_order(x)).collect();
    let primes_of = |t: &TypeTriple| -> BTreeSet<u64> { prime_factors(t.r * t.s * t.t) };
    let mut second: HashMap<BTreeSet<u64>, Option<(H::Elem, H::Elem)>> = HashMap::new();
    for a1 in reps.iter().filter(|a| h.element_order(a) % 2 == 0) {
        for (c1, _) in elems.iter().zip(&orders).filter(|(_, o)| *o % 2 == 0) {
            let t1 = type_of(h, a1, c1);
            let squares = [h.compose(a1, a1), h.compose(a1, c1), h.compose(c1, c1)];
            if h.generates(&squares, DEFAULT_BUDGET) != Generation::Yes {
                continue;
            }
            let banned = primes_of(&t1);
            let pair2 = second.entry(banned.clone()).or_insert_with(|| {
                let ok = |o: u64| prime_factors(o).is_disjoint(&banned);
                reps.iter().filter(|a| ok(h.element_order(a))).find_map(|a2| {
                    elems
                        .iter()
                        .zip(&orders)
                        .filter(|(_, o)| ok(**o))
                        .map(|(c2, _)| c2)
                        .find(|c2| {
                            ok(h.element_order(&h.compose(a2, c2)))
                                && h.generates(&[a2.clone(), (*c2).clone()], DEFAULT_BUDGET) == Generation::Yes
                        })
                        .map(|c2| (a2.clone(), c2.clone()))
                })
            });
            if let Some((a2, c2)) = pair2 {
                return Some(Structure {
                    a1: a1.clone(),
                    c1: c1.clone(),
                    a2: a2.clone(),
                    c2: c2.clone(),
                });
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reality {
    RealIsomorphic,
    NotIsomorphicToConjugate,
    HypothesesNotMet,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RealityReport {
    pub verdict: Reality,
    pub types: [TypeTriple; 2],
    /// The two unordered order sets differ.
    pub distinct_types: bool,
    /// `ord(aᵢ) < ord(aᵢcᵢ) < ord(cᵢ)` per pair.
    pub order_chain: [bool; 2],
    pub supply_complete: bool,
    /// Name of an automorphism coset inverting each pair on its own, if any.
    pub pair_inverted_by: [Option<String>; 2],
    /// Automorphism and the two inner conjugators inverting both pairs.
    pub certificate: Option<(String, Value, Value)>,
    pub reason: String,
}

/// Decides whether the surface of `v` is isomorphic to its conjugate, from
/// automorphisms `ψ∘φⱼ` (with `φⱼ` inner) inverting both pairs.
///
/// An inverting automorphism common to both pairs gives a real structure
/// outright. A negative answer needs `supply` to cover `Aut(G)` and either
/// the order hypotheses on both pairs, or distinct order sets together with
/// one pair that has pairwise distinct orders and no inverting automorphism
/// at all.
pub fn reality_verdict<G: FiniteGroup>(
    g: &G,
    v: &Structure<G::Elem>,
    supply: &AutSupply<G::Elem>,
) -> RealityReport {
    let types = [type_of(g, &v.a1, &v.c1), type_of(g, &v.a2, &v.c2)];
    let distinct_types = types[0].order_set() != types[1].order_set();
    let order_chain = [types[0].order_chain(), types[1].order_chain()];
    let pairs = v.pairs();
    let mut pair_inverted_by: [Option<String>; 2] = [None, None];
    let mut certificate = None;
    for (name, psi) in &supply.representatives {
        let conj: Vec<Option<G::Elem>> = pairs
            .iter()
            .map(|(a, c)| {
                g.simultaneous_conjugator(&[(psi(a), g.invert(a)), (psi(c), g.invert(c))])
            })
            .collect();
        for j in 0..2 {
            if conj[j].is_some() && pair_inverted_by[j].is_none() {
                pair_inverted_by[j] = Some(name.clone());
            }
        }
        if let (Some(h1), Some(h2)) = (&conj[0], &conj[1]) {
            certificate = Some((name.clone(), g.encode(h1), g.encode(h2)));
            break;
        }
    }
    let (verdict, reason) = if let Some((name, _, _)) = &certificate {
        (
            Reality::RealIsomorphic,
            format!("automorphism `{name}` composed with inner ones inverts both pairs"),
        )
    } else if !supply.complete {
        (
            Reality::HypothesesNotMet,
            "the supplied automorphisms may not cover Aut(G)".to_string(),
        )
    } else if distinct_types && order_chain[0] && order_chain[1] {
        (
            Reality::NotIsomorphicToConjugate,
            "order hypotheses hold and no automorphism inverts both pairs".to_string(),
        )
    } else if let Some(j) = (0..2).find(|&j| {
        distinct_types && types[j].pairwise_distinct() && pair_inverted_by[j].is_none()
    }) {
        (
            Reality::NotIsomorphicToConjugate,
            format!("pair {} has distinct orders and no automorphism inverts it", j + 1),
        )
    } else {
        (
            Reality::HypothesesNotMet,
            "order hypotheses fail and no one-sided obstruction applies".to_string(),
        )
    };
    RealityReport {
        verdict,
        types,
        distinct_types,
        order_chain,
        supply_complete: supply.complete,
        pair_inverted_by,
        certificate,
        reason,
    }
}

/// The explicit pairs in `S_n` and everything checked about them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SnExample {
    pub n: usize,
    pub p: usize,
    pub a: String,
    pub c: String,
    pub a_prime: String,
    pub c_prime: String,
    /// `a³`, a transposition.
    pub a_cubed: String,
    /// `c · a³`, an `n`-cycle.
    pub c_times_a_cubed: String,
    pub generation: [Generation; 2],
    /// Cycle types of the nontrivial members of each Σ-set.
    pub sigma_types: [Vec<String>; 2],
    pub sigma_disjoint: bool,
    /// A permutation inverting `a` and `c` by conjugation; expected absent.
    pub inverting_conjugator: Option<String>,
    pub structure_valid: bool,
    pub reality: RealityReport,
}

impl SnExample {
    pub fn verified(&self) -> bool {
        self.generation == [Generation::Yes, Generation::Yes]
            && self.sigma_disjoint
            && self.structure_valid
            && self.inverting_conjugator.is_none()
            && self.a_cubed.matches(',').count() == 1
    }
}

/// The pairs `a = (1,p+2,p+1)(2,p+3)`, `c = (1,…,p)(p+1,…,n)` and
/// `a′ = σ⁻¹`, `c′ = τσ²` with `σ = (1,…,n)`, `τ = (1,2)`.
pub fn sn_pairs(n: usize, p: usize) -> Result<[Permutation; 4], BeauvilleError> {
    let mut bad = Vec::new();
    if n < 7 {
        bad.push(format!("n = {n} < 7"));
    }
    if p % 2 == 0 || !is_prime(p as u64) {
        bad.push(format!("p = {p} is not an odd prime"));
    }
    if p + 3 > n {
        bad.push(format!("p + 3 = {} > n = {n}", p + 3));
    }
    if p > 1 && (n % p == 0 || n % p == 1) {
        bad.push(format!("n = {n} is {} mod {p}", n % p));
    }
    if !bad.is_empty() {
        return Err(BeauvilleError::Preconditions(bad));
    }
    let (n32, p32) = (n as u32, p as u32);
    let mk = |cycles: Vec<Vec<u32>>| Permutation::from_cycles(&cycles, n).expect("valid cycles");
    let a = mk(vec![vec![1, p32 + 2, p32 + 1], vec![2, p32 + 3]]);
    let c = mk(vec![(1..=p32).collect(), (p32 + 1..=n32).collect()]);
    let sigma = Permutation::long_cycle(n);
    let tau = mk(vec![vec![1, 2]]);
    Ok([a, c, sigma.inverse(), tau.compose(&sigma.pow(2))])
}

fn sigma_cycle_types(g: &SymGroup, a: &Permutation, c: &Permutation) -> Vec<String> {
    sigma_keys(g, a, c)
        .into_iter()
        .filter(|t| !t.is_identity())
        .map(|t| format!("{:?}", t.parts()))
        .collect()
}

/// Builds the `S_n` pairs and runs every check on them.
pub fn sn_example(n: usize, p: usize) -> Result<SnExample, BeauvilleError> {
    let [a, c, a2, c2] = sn_pairs(n, p)?;
    let g = SymGroup::new(n)?;
    let a3 = a.pow(3);
    let c_a3 = c.compose(&a3);
    let generation = [
        g.generates(&[a.clone(), c.clone()], DEFAULT_BUDGET),
        g.generates(&[a2.clone(), c2.clone()], DEFAULT_BUDGET),
    ];
    let s1 = sigma_cycle_types(&g, &a, &c);
    let s2 = sigma_cycle_types(&g, &a2, &c2);
    let sigma_disjoint = s1.iter().all(|t| !s2.contains(t));
    let inverting = g.simultaneous_conjugator(&[(a.clone(), a.inverse()), (c.clone(), c.inverse())]);
    let v = Structure {
        a1: a.clone(),
        c1: c.clone(),
        a2: a2.clone(),
        c2: c2.clone(),
    };
    let structure_valid = is_unmixed(&g, &v, DEFAULT_BUDGET)?.valid;
    let reality = reality_verdict(&g, &v, &g.automorphisms());
    Ok(SnExample {
        n,
        p,
        a: a.to_string(),
        c: c.to_string(),
        a_prime: a2.to_string(),
        c_prime: c2.to_string(),
        a_cubed: a3.to_string(),
        c_times_a_cubed: c_a3.to_string(),
        generation,
        sigma_types: [s1, s2],
        sigma_disjoint,
        inverting_conjugator: inverting.map(|x| x.to_string()),
        structure_valid,
        reality,
    })
}

/// Least odd prime `p` (at most `bound`, if given) with `n mod p ∉ {0, 1}`.
pub fn find_prime(n: u64, bound: Option<u64>) -> Option<u64> {
    let limit = bound.unwrap_or(u64::MAX);
    (3..)
        .step_by(2)
        .take_while(|&p| p <= limit && p <= n.max(3) + 2)
        .filter(|&p| is_prime(p))
        .find(|&p| n % p != 0 && n % p != 1)
}

/// The prime picked by the existence argument: a divisor of `n − 2` for odd
/// `n`; for even `n` a divisor `≠ 3` of `n − 3`, or failing that a divisor
/// `> 3` of `n + 3`. Returns the route taken alongside.
pub fn prime_lemma_path(n: u64) -> Option<(u64, &'static str)> {
    if n < 5 {
        return None;
    }
    let least_odd = |m: u64, min: u64| prime_factors(m).into_iter().find(|&p| p % 2 == 1 && p >= min);
    let p = if n % 2 == 1 {
        least_odd(n - 2, 3).map(|p| (p, "divides n - 2"))
    } else {
        least_odd(n - 3, 5)
            .map(|p| (p, "divides n - 3"))
            .or_else(|| least_odd(n + 3, 5).map(|p| (p, "divides n + 3")))
    };
    p.filter(|&(p, _)| n % p != 0 && n % p != 1)
}

/// Primes `p > 5` with `p ≡ 1 (4)`, `p ≢ 2, 4 (5)`, `p ≢ 5 (13)`,
/// `p ≢ 4 (11)`, each paired with `n = 3p + 1`.
pub fn nonreal_alternating_parameters(limit: u64) -> Vec<(u64, u64)> {
    (7..=limit)
        .filter(|&p| is_prime(p))
        .filter(|&p| p % 4 == 1 && p % 5 != 2 && p % 5 != 4 && p % 13 != 5 && p % 11 != 4)
        .map(|p| (p, 3 * p + 1))
        .collect()
}

/// `n ≥ 16`, `n ≡ 0 (4)`, `n ≡ 1 (3)`, `n ≢ 3, 4 (7)`.
pub fn alternating_nonconjugate_degree(n: u64) -> bool {
    n >= 16 && n % 4 == 0 && n % 3 == 1 && n % 7 != 3 && n % 7 != 4
}

/// Primes with `p ≡ 3 (4)` and `p ≡ 1 (5)`, for which `H₍₄₎` over
/// `SL(2, 𝔽_p)` carries a mixed structure.
pub fn mixed_sl2_primes(limit: u64) -> Vec<u64> {
    (2..=limit)
        .filter(|&p| is_prime(p) && p % 4 == 3 && p % 5 == 1)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{AltGroup, Psl2, Sl2, ZnxZn};

    #[test]
    fn mu_and_genus() {
        let t = TypeTriple::new(5, 5, 5);
        assert_eq!(t.mu(), Ratio::new(3, 5));
        assert!(t.is_hyperbolic());
        assert!(!TypeTriple::new(2, 3, 6).is_hyperbolic());
        assert!(!TypeTriple::new(2, 2, 9).is_hyperbolic());
        assert_eq!(genus_triangle(25, t).unwrap(), 6);
        assert_eq!(genus_triangle(24, TypeTriple::new(2, 3, 6)).unwrap(), 1);
        assert_eq!(genus_triangle(168, TypeTriple::new(3, 3, 7)).unwrap(), 17);
        assert!(genus_triangle(10, TypeTriple::new(3, 5, 5)).is_err());
    }

    #[test]
    fn sigma_in_z5_squared() {
        let g = ZnxZn::new(5).unwrap();
        assert_eq!(sigma_set(&g, &(1, 0), &(0, 1), 100).len(), Some(13));
        let v = Structure { a1: (1, 0), c1: (0, 1), a2: (1, 2), c2: (1, 4) };
        assert!(is_unmixed(&g, &v, 100).unwrap().valid);
        let w = Structure { a1: (1, 0), c1: (0, 1), a2: (1, 0), c2: (1, 4) };
        let verdict = is_unmixed(&g, &w, 100).unwrap();
        assert!(matches!(verdict.failure, Some(UnmixedFailure::CommonElement { .. })));
    }

    #[test]
    fn searches() {
        let a5 = AltGroup::new(5).unwrap();
        assert!(matches!(search_unmixed(&a5, &SearchOptions::default()), SearchOutcome::Exhausted { .. }));
        let g = Psl2::new(7).unwrap();
        match search_unmixed(&g, &SearchOptions::default()) {
            SearchOutcome::Found { structure, types, .. } => {
                assert!(is_unmixed(&g, &structure, DEFAULT_BUDGET).unwrap().valid);
                assert!(types.iter().all(|t| t.is_hyperbolic()));
            }
            other => panic!("{other:?}"),
        }
        let z3 = ZnxZn::new(3).unwrap();
        assert!(matches!(search_unmixed(&z3, &SearchOptions::default()), SearchOutcome::Exhausted { .. }));
    }

    #[test]
    fn s8_example() {
        let ex = sn_example(8, 5).unwrap();
        assert_eq!(ex.a, "(1,7,6)(2,8)");
        assert_eq!(ex.a_cubed, "(2,8)");
        assert!(ex.verified(), "{ex:#?}");
        assert_eq!(ex.reality.verdict, Reality::NotIsomorphicToConjugate);
        assert!(sn_example(7, 3).is_err());
        assert!(sn_example(9, 7).is_err());
    }

    #[test]
    fn abelian_is_real() {
        let g = ZnxZn::new(5).unwrap();
        let v = Structure { a1: (1, 0), c1: (0, 1), a2: (1, 2), c2: (1, 4) };
        assert_eq!(reality_verdict(&g, &v, &g.automorphisms()).verdict, Reality::RealIsomorphic);
    }

    #[test]
    fn primes() {
        assert_eq!(find_prime(7, None), Some(5));
        assert_eq!(find_prime(9, None), Some(5));
        assert_eq!(prime_lemma_path(9), Some((7, "divides n - 2")));
        assert_eq!(find_prime(11, None), Some(3));
        assert_eq!(find_prime(6, None), Some(7));
        assert_eq!(find_prime(7, Some(4)), None);
        assert_eq!(prime_lemma_path(12), Some((5, "divides n + 3")));
        assert_eq!(prime_lemma_path(6), None);
        assert_eq!(nonreal_alternating_parameters(20)[0], (13, 40));
        assert_eq!(mixed_sl2_primes(40), vec![11, 31]);
        assert!(alternating_nonconjugate_degree(16));
    }

    #[test]
    fn h4_lemma_on_small_group() {
        let h4 = H4Group::new(Sl2::new(5).unwrap()).unwrap();
        let h = h4.inner();
        let id = h.identity();
        let r = h4_lemma_check(&h4, &id, &id, &id, &id, false).unwrap();
        assert!(!r.holds());
        assert!(!r.hypotheses[1].holds);
    }
}
