use serde_json::{json, Value};

use super::{AutSupply, ConjugacyClass, FiniteGroup, GroupError};

/// `(ℤ/n)²` with residue-pair elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZnxZn {
    n: u32,
}

impl ZnxZn {
    pub fn new(n: u32) -> Result<Self, GroupError> {
        if n == 0 || n > 4096 {
            return Err(GroupError::Parameters(format!("znxzn:{n} needs 1 <= n <= 4096")));
        }
        Ok(ZnxZn { n })
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    /// `x ↦ −x`, an automorphism of order two for `n > 2`.
    pub fn negate(&self, x: &(u32, u32)) -> (u32, u32) {
        ((self.n - x.0) % self.n, (self.n - x.1) % self.n)
    }
}

impl FiniteGroup for ZnxZn {
    type Elem = (u32, u32);
    type ClassKey = (u32, u32);

    fn spec(&self) -> String {
        format!("znxzn:{}", self.n)
    }

    fn identity(&self) -> (u32, u32) {
        (0, 0)
    }

    fn compose(&self, a: &(u32, u32), b: &(u32, u32)) -> (u32, u32) {
        ((a.0 + b.0) % self.n, (a.1 + b.1) % self.n)
    }

    fn invert(&self, a: &(u32, u32)) -> (u32, u32) {
        self.negate(a)
    }

    fn order(&self) -> u64 {
        u64::from(self.n) * u64::from(self.n)
    }

    fn generators(&self) -> Vec<(u32, u32)> {
        vec![(1 % self.n, 0), (0, 1 % self.n)]
    }

    fn contains(&self, x: &(u32, u32)) -> bool {
        x.0 < self.n && x.1 < self.n
    }

    fn class_key(&self, x: &(u32, u32)) -> (u32, u32) {
        *x
    }

    fn conjugate(&self, x: &(u32, u32), _g: &(u32, u32)) -> (u32, u32) {
        *x
    }

    fn classes(&self) -> Vec<ConjugacyClass<(u32, u32), (u32, u32)>> {
        self.elements()
            .into_iter()
            .map(|x| ConjugacyClass {
                representative: x,
                key: x,
                size: 1,
                element_order: self.element_order(&x),
            })
            .collect()
    }

    fn for_each_element(&self, f: &mut dyn FnMut(&(u32, u32))) {
        for a in 0..self.n {
            for b in 0..self.n {
                f(&(a, b));
            }
        }
    }

    fn encode(&self, x: &(u32, u32)) -> Value {
        json!([x.0, x.1])
    }

    fn decode(&self, v: &Value) -> Result<(u32, u32), GroupError> {
        let [a, b]: [i64; 2] = serde_json::from_value(v.clone())
            .map_err(|e| GroupError::Decode(format!("expected [a, b]: {e}")))?;
        let n = i64::from(self.n);
        Ok((a.rem_euclid(n) as u32, b.rem_euclid(n) as u32))
    }

    /// Only `x ↦ −x` is supplied.
    fn automorphisms(&self) -> AutSupply<(u32, u32)> {
        let n = self.n;
        AutSupply::inner_only(n <= 2).with("negation", move |x: &(u32, u32)| ((n - x.0) % n, (n - x.1) % n))
    }

    fn element_order(&self, x: &(u32, u32)) -> u64 {
        let g = num_integer::gcd(num_integer::gcd(x.0, x.1), self.n);
        u64::from(self.n / g)
    }

    fn subgroup_order(&self, gens: &[(u32, u32)], _budget: u64) -> Option<u64> {
        // The index of the lattice spanned by the generators and nℤ² is the
        // gcd of its 2×2 minors.
        let n = i64::from(self.n);
        let mut rows: Vec<[i64; 2]> = gens.iter().map(|g| [i64::from(g.0), i64::from(g.1)]).collect();
        rows.push([n, 0]);
        rows.push([0, n]);
        let mut index = 0i64;
        for (i, r) in rows.iter().enumerate() {
            for s in &rows[i + 1..] {
                index = num_integer::gcd(index, r[0] * s[1] - r[1] * s[0]);
            }
        }
        Some(self.order() / index as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        let g = ZnxZn::new(5).unwrap();
        assert_eq!(g.order(), 25);
        assert_eq!(g.element_order(&(1, 0)), 5);
        assert_eq!(g.element_order(&(0, 0)), 1);
        assert_eq!(g.decode(&json!([-1, 7])).unwrap(), (4, 2));
    }

    #[test]
    fn subgroup_order_matches_closure() {
        for n in [4u32, 6, 9, 12] {
            let g = ZnxZn::new(n).unwrap();
            let els = g.elements();
            for (i, a) in els.iter().enumerate().step_by(5) {
                for b in els.iter().skip(i % 7).step_by(11) {
                    let gens = [*a, *b];
                    let fast = g.subgroup_order(&gens, u64::MAX).unwrap();
                    let mut seen = std::collections::HashSet::from([(0u32, 0u32)]);
                    let mut queue = vec![(0u32, 0u32)];
                    while let Some(x) = queue.pop() {
                        for h in &gens {
                            let y = g.compose(&x, h);
                            if seen.insert(y) {
                                queue.push(y);
                            }
                        }
                    }
                    assert_eq!(fast, seen.len() as u64, "n={n} gens={gens:?}");
                }
            }
        }
    }
}
