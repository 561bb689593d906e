use serde_json::{json, Value};

use super::{decode_permutation, AutSupply, ConjugacyClass, FiniteGroup, Generation, GroupError};
use crate::monodromy::partitions;
use crate::perm::{is_primitive, is_transitive, CycleType, Permutation};

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// `(1,…,l₁)(l₁+1,…,l₁+l₂)…` for the parts in the given order.
fn standard_representative(t: &CycleType) -> Permutation {
    let n = t.degree();
    let mut images: Vec<u32> = (0..n as u32).collect();
    let mut start = 0usize;
    for &l in t.parts() {
        for i in 0..l {
            images[start + i] = (start + (i + 1) % l) as u32;
        }
        start += l;
    }
    Permutation::from_images(images).expect("disjoint cycles")
}

/// Size of the centralizer: `∏ l^{k_l} k_l!`.
fn centralizer_order(t: &CycleType) -> u64 {
    let mut out = 1u64;
    let parts = t.parts();
    let mut i = 0;
    while i < parts.len() {
        let l = parts[i];
        let k = parts[i..].iter().take_while(|&&x| x == l).count();
        out *= (l as u64).pow(k as u32) * factorial(k);
        i += k;
    }
    out
}

fn class_order(t: &CycleType) -> u64 {
    t.parts()
        .iter()
        .fold(1u64, |acc, &l| num_integer::lcm(acc, l as u64))
}

fn all_permutations(n: usize, f: &mut dyn FnMut(&Permutation)) {
    let mut images: Vec<u32> = (0..n as u32).collect();
    loop {
        f(&Permutation::from_images(images.clone()).expect("bijection"));
        // Next permutation in lexicographic order.
        let Some(i) = (1..n).rev().find(|&i| images[i - 1] < images[i]) else {
            return;
        };
        let j = (i..n).rev().find(|&j| images[j] > images[i - 1]).unwrap();
        images.swap(i - 1, j);
        images[i..].reverse();
    }
}

/// How a certificate shows that a primitive group contains `A_n`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct JordanWitness {
    /// Word in the generators, e.g. `"g2*g1*g1"` (rightmost acts first).
    pub word: String,
    pub power: u64,
    /// The resulting transposition or prime cycle, in cycle notation.
    pub element: String,
    pub kind: &'static str,
}

/// Looks for a transposition, a 3-cycle, or a `p`-cycle with `p ≤ n − 3`
/// among powers of words of length at most three in `gens`. With the group
/// primitive, Jordan's theorem then gives `A_n ≤ ⟨gens⟩`.
pub fn jordan_witness(gens: &[Permutation], n: usize) -> Option<JordanWitness> {
    let mut words: Vec<(String, Permutation)> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| (format!("g{}", i + 1), g.clone()))
        .collect();
    let mut frontier = words.clone();
    for _ in 1..3 {
        let mut next = Vec::new();
        for (w, x) in &frontier {
            for (i, g) in gens.iter().enumerate() {
                next.push((format!("{w}*g{}", i + 1), x.compose(g)));
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    let mut best: Option<(usize, JordanWitness)> = None;
    for (word, x) in &words {
        let m = x.order();
        for k in (1..m).filter(|k| m % k == 0) {
            let y = x.pow(k);
            let nontrivial: Vec<usize> = y.cycle_type().nontrivial().collect();
            let (rank, kind) = match nontrivial.as_slice() {
                [2] => (0, "transposition"),
                [3] => (1, "3-cycle"),
                [p] if super::is_prime(*p as u64) && *p + 3 <= n => (2, "prime cycle"),
                _ => continue,
            };
            if best.as_ref().map_or(true, |(r, _)| rank < *r) {
                best = Some((
                    rank,
                    JordanWitness {
                        word: word.clone(),
                        power: k,
                        element: y.to_string(),
                        kind,
                    },
                ));
            }
            if rank == 0 {
                return best.map(|(_, w)| w);
            }
        }
    }
    best.map(|(_, w)| w)
}

/// The symmetric group on `{1..n}`.
#[derive(Debug, Clone)]
pub struct SymGroup {
    n: usize,
}

impl SymGroup {
    pub fn new(n: usize) -> Result<Self, GroupError> {
        if n == 0 || n > 20 {
            return Err(GroupError::Parameters(format!("sym:{n} needs 1 <= n <= 20")));
        }
        Ok(SymGroup { n })
    }

    pub fn degree(&self) -> usize {
        self.n
    }
}

impl FiniteGroup for SymGroup {
    type Elem = Permutation;
    type ClassKey = CycleType;

    fn spec(&self) -> String {
        format!("sym:{}", self.n)
    }

    fn identity(&self) -> Permutation {
        Permutation::identity(self.n)
    }

    fn compose(&self, a: &Permutation, b: &Permutation) -> Permutation {
        a.compose(b)
    }

    fn invert(&self, a: &Permutation) -> Permutation {
        a.inverse()
    }

    fn conjugate(&self, x: &Permutation, g: &Permutation) -> Permutation {
        x.conjugate_by(g)
    }

    fn order(&self) -> u64 {
        factorial(self.n)
    }

    fn generators(&self) -> Vec<Permutation> {
        if self.n < 2 {
            return Vec::new();
        }
        vec![
            Permutation::from_cycles(&[vec![1, 2]], self.n).expect("transposition"),
            Permutation::long_cycle(self.n),
        ]
    }

    fn contains(&self, x: &Permutation) -> bool {
        x.degree() == self.n
    }

    fn class_key(&self, x: &Permutation) -> CycleType {
        x.cycle_type()
    }

    fn classes(&self) -> Vec<ConjugacyClass<Permutation, CycleType>> {
        partitions(self.n)
            .into_iter()
            .map(|t| ConjugacyClass {
                representative: standard_representative(&t),
                size: factorial(self.n) / centralizer_order(&t),
                element_order: class_order(&t),
                key: t,
            })
            .collect()
    }

    fn for_each_element(&self, f: &mut dyn FnMut(&Permutation)) {
        all_permutations(self.n, f);
    }

    fn encode(&self, x: &Permutation) -> Value {
        json!(x.to_cycles_one_based())
    }

    fn decode(&self, v: &Value) -> Result<Permutation, GroupError> {
        decode_permutation(v, self.n)
    }

    fn as_permutation(&self, x: &Permutation) -> Option<Permutation> {
        Some(x.clone())
    }

    fn simultaneous_conjugator(&self, pairs: &[(Permutation, Permutation)]) -> Option<Permutation> {
        crate::perm::simultaneous_conjugator(pairs)
    }

    /// Every automorphism of `S_n` is inner unless `n = 6`.
    fn automorphisms(&self) -> AutSupply<Permutation> {
        AutSupply::inner_only(self.n != 6)
    }

    fn element_order(&self, x: &Permutation) -> u64 {
        x.order()
    }

    fn pow(&self, x: &Permutation, e: u64) -> Permutation {
        x.pow(e)
    }

    fn generates(&self, gens: &[Permutation], budget: u64) -> Generation {
        let n = self.n;
        if gens.iter().any(|g| g.degree() != n) {
            return Generation::No;
        }
        if n <= 1 {
            return Generation::Yes;
        }
        if !is_transitive(gens, n) {
            return Generation::No;
        }
        if is_primitive(gens, n) && jordan_witness(gens, n).is_some() {
            return Generation::from_bool(gens.iter().any(|g| !g.is_even()));
        }
        match self.subgroup_order(gens, budget.max(1)) {
            Some(k) => Generation::from_bool(k == self.order()),
            None => Generation::Unknown,
        }
    }
}

/// The centralizer in `S_n` of a transitive set of permutations. Each member
/// is fixed by the image of point `0`, so there are at most `n`.
fn transitive_centralizer(xs: &[Permutation], n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    'target: for t in 0..n {
        let mut images = vec![u32::MAX; n];
        images[0] = t as u32;
        let mut stack = vec![0usize];
        while let Some(p) = stack.pop() {
            let cp = images[p] as usize;
            for x in xs {
                let (q, cq) = (x.apply(p), x.apply(cp));
                if images[q] == u32::MAX {
                    images[q] = cq as u32;
                    stack.push(q);
                } else if images[q] as usize != cq {
                    continue 'target;
                }
            }
        }
        if let Ok(c) = Permutation::from_images(images) {
            out.push(c);
        }
    }
    out
}

/// Class key in `A_n`: the cycle type, refined by `±1` on classes that split
/// (all cycle lengths odd and distinct), `0` otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AltKey {
    pub cycle_type: CycleType,
    pub split: i8,
}

fn splits_in_alternating(t: &CycleType) -> bool {
    let p = t.parts();
    p.iter().all(|l| l % 2 == 1) && p.windows(2).all(|w| w[0] != w[1])
}

/// The even permutations of `{1..n}`.
#[derive(Debug, Clone)]
pub struct AltGroup {
    n: usize,
}

impl AltGroup {
    pub fn new(n: usize) -> Result<Self, GroupError> {
        if n == 0 || n > 20 {
            return Err(GroupError::Parameters(format!("alt:{n} needs 1 <= n <= 20")));
        }
        Ok(AltGroup { n })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Sign of the split class of `x`: the parity of the conjugator from the
    /// standard representative, which is well defined because the
    /// centralizer of such an element consists of even permutations.
    fn split_sign(&self, x: &Permutation, t: &CycleType) -> i8 {
        let mut cycles = x.cycles();
        cycles.sort_by(|a, b| b.len().cmp(&a.len()));
        let mut g = vec![0u32; self.n];
        let mut start = 0usize;
        for c in &cycles {
            for (i, &p) in c.iter().enumerate() {
                g[start + i] = p as u32;
            }
            start += c.len();
        }
        debug_assert_eq!(
            standard_representative(t).conjugate_by(&Permutation::from_images(g.clone()).unwrap()),
            *x
        );
        if Permutation::from_images(g).expect("bijection").is_even() {
            1
        } else {
            -1
        }
    }
}

impl FiniteGroup for AltGroup {
    type Elem = Permutation;
    type ClassKey = AltKey;

    fn spec(&self) -> String {
        format!("alt:{}", self.n)
    }

    fn identity(&self) -> Permutation {
        Permutation::identity(self.n)
    }

    fn compose(&self, a: &Permutation, b: &Permutation) -> Permutation {
        a.compose(b)
    }

    fn invert(&self, a: &Permutation) -> Permutation {
        a.inverse()
    }

    fn conjugate(&self, x: &Permutation, g: &Permutation) -> Permutation {
        x.conjugate_by(g)
    }

    fn order(&self) -> u64 {
        (factorial(self.n) / 2).max(1)
    }

    fn generators(&self) -> Vec<Permutation> {
        let n = self.n;
        if n < 3 {
            return Vec::new();
        }
        let three = Permutation::from_cycles(&[vec![1, 2, 3]], n).expect("3-cycle");
        if n == 3 {
            return vec![three];
        }
        let long: Vec<u32> = if n % 2 == 1 {
            (1..=n as u32).collect()
        } else {
            (2..=n as u32).collect()
        };
        vec![three, Permutation::from_cycles(&[long], n).expect("cycle")]
    }

    fn contains(&self, x: &Permutation) -> bool {
        x.degree() == self.n && x.is_even()
    }

    fn class_key(&self, x: &Permutation) -> AltKey {
        let t = x.cycle_type();
        let split = if splits_in_alternating(&t) && self.n > 1 {
            self.split_sign(x, &t)
        } else {
            0
        };
        AltKey {
            cycle_type: t,
            split,
        }
    }

    fn classes(&self) -> Vec<ConjugacyClass<Permutation, AltKey>> {
        let mut out = Vec::new();
        for t in partitions(self.n) {
            let rep = standard_representative(&t);
            if !rep.is_even() {
                continue;
            }
            let size = factorial(self.n) / centralizer_order(&t);
            let element_order = class_order(&t);
            if splits_in_alternating(&t) && self.n > 1 {
                let swap = Permutation::from_cycles(&[vec![1, 2]], self.n).expect("transposition");
                for (r, split) in [(rep.clone(), 1), (rep.conjugate_by(&swap), -1)] {
                    out.push(ConjugacyClass {
                        representative: r,
                        key: AltKey {
                            cycle_type: t.clone(),
                            split,
                        },
                        size: size / 2,
                        element_order,
                    });
                }
            } else {
                out.push(ConjugacyClass {
                    representative: rep,
                    key: AltKey {
                        cycle_type: t,
                        split: 0,
                    },
                    size,
                    element_order,
                });
            }
        }
        out
    }

    fn for_each_element(&self, f: &mut dyn FnMut(&Permutation)) {
        all_permutations(self.n, &mut |x| {
            if x.is_even() {
                f(x)
            }
        });
    }

    fn encode(&self, x: &Permutation) -> Value {
        json!(x.to_cycles_one_based())
    }

    fn decode(&self, v: &Value) -> Result<Permutation, GroupError> {
        let x = decode_permutation(v, self.n)?;
        if !x.is_even() {
            return Err(GroupError::NotMember(self.spec()));
        }
        Ok(x)
    }

    fn as_permutation(&self, x: &Permutation) -> Option<Permutation> {
        Some(x.clone())
    }

    /// Conjugation by `(1,2)`; with inner automorphisms this is all of
    /// `Aut(A_n)` unless `n = 6`.
    fn automorphisms(&self) -> AutSupply<Permutation> {
        if self.n < 2 {
            return AutSupply::inner_only(true);
        }
        let t = Permutation::from_cycles(&[vec![1, 2]], self.n).expect("valid transposition");
        AutSupply::inner_only(self.n != 6).with("conj (1,2)", move |x: &Permutation| x.conjugate_by(&t))
    }

    /// All `S_n` solutions form a coset of the centralizer of the `xᵢ`; one
    /// even member is looked for in that coset.
    fn simultaneous_conjugator(&self, pairs: &[(Permutation, Permutation)]) -> Option<Permutation> {
        let g = crate::perm::simultaneous_conjugator(pairs)?;
        if g.is_even() {
            return Some(g);
        }
        let xs: Vec<Permutation> = pairs.iter().map(|(x, _)| x.clone()).collect();
        if !is_transitive(&xs, self.n) {
            let mut found = None;
            self.for_each_element(&mut |h| {
                if found.is_none() && pairs.iter().all(|(x, y)| x.conjugate_by(h) == *y) {
                    found = Some(h.clone());
                }
            });
            return found;
        }
        transitive_centralizer(&xs, self.n)
            .into_iter()
            .find(|c| !c.is_even())
            .map(|c| g.compose(&c))
    }

    fn element_order(&self, x: &Permutation) -> u64 {
        x.order()
    }

    fn pow(&self, x: &Permutation, e: u64) -> Permutation {
        x.pow(e)
    }

    fn generates(&self, gens: &[Permutation], budget: u64) -> Generation {
        let n = self.n;
        if !gens.iter().all(|g| self.contains(g)) {
            return Generation::No;
        }
        if n <= 2 {
            return Generation::Yes;
        }
        if !is_transitive(gens, n) {
            return Generation::No;
        }
        if is_primitive(gens, n) && jordan_witness(gens, n).is_some() {
            return Generation::Yes;
        }
        match self.subgroup_order(gens, budget.max(1)) {
            Some(k) => Generation::from_bool(k == self.order()),
            None => Generation::Unknown,
        }
    }
}
