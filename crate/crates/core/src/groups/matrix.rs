use std::sync::OnceLock;

use serde_json::{json, Value};

use super::{is_prime, AutSupply, ClassTable, ConjugacyClass, FiniteGroup, GroupError};

/// A 2×2 matrix over `𝔽_p`, entries in `0..p`, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2(pub [u32; 4]);

impl Mat2 {
    fn mul(&self, o: &Mat2, p: u32) -> Mat2 {
        let [a, b, c, d] = self.0.map(u64::from);
        let [e, f, g, h] = o.0.map(u64::from);
        let p = u64::from(p);
        Mat2([
            ((a * e + b * g) % p) as u32,
            ((a * f + b * h) % p) as u32,
            ((c * e + d * g) % p) as u32,
            ((c * f + d * h) % p) as u32,
        ])
    }

    /// Inverse of a determinant-one matrix.
    fn adjugate(&self, p: u32) -> Mat2 {
        let [a, b, c, d] = self.0;
        Mat2([d, (p - b) % p, (p - c) % p, a])
    }

    fn det(&self, p: u32) -> u32 {
        let [a, b, c, d] = self.0.map(u64::from);
        let p64 = u64::from(p);
        ((a * d % p64 + p64 * p64 - b * c % p64) % p64) as u32
    }

    /// `D·m·D⁻¹` for `D = diag(ν, 1)`.
    fn diagonal_conjugate(&self, nu: u32, p: u32) -> Mat2 {
        let [a, b, c, d] = self.0.map(u64::from);
        let (nu, p64) = (u64::from(nu), u64::from(p));
        let nu_inv = (1..p64).find(|v| v * nu % p64 == 1).unwrap_or(1);
        Mat2([a as u32, (nu * b % p64) as u32, (nu_inv * c % p64) as u32, d as u32])
    }

    fn negate(&self, p: u32) -> Mat2 {
        Mat2(self.0.map(|x| (p - x) % p))
    }

    fn decode(v: &Value, p: u32) -> Result<Mat2, GroupError> {
        let rows: Vec<Vec<i64>> = serde_json::from_value(v.clone())
            .map_err(|e| GroupError::Decode(format!("expected [[a,b],[c,d]]: {e}")))?;
        if rows.len() != 2 || rows.iter().any(|r| r.len() != 2) {
            return Err(GroupError::Decode("expected a 2x2 matrix".into()));
        }
        let m = |x: i64| x.rem_euclid(i64::from(p)) as u32;
        Ok(Mat2([m(rows[0][0]), m(rows[0][1]), m(rows[1][0]), m(rows[1][1])]))
    }

    fn encode(&self) -> Value {
        json!([[self.0[0], self.0[1]], [self.0[2], self.0[3]]])
    }
}

fn check_prime(family: &str, p: u32) -> Result<(), GroupError> {
    if !is_prime(u64::from(p)) || p > 50 {
        return Err(GroupError::Parameters(format!(
            "{family}:{p} needs a prime p <= 50"
        )));
    }
    Ok(())
}

/// The least quadratic non-residue mod `p`, for odd `p`.
fn non_residue(p: u32) -> Option<u32> {
    let p64 = u64::from(p);
    (2..p).find(|&v| (1..p64).all(|x| x * x % p64 != u64::from(v)))
}

/// `S = [[0,−1],[1,0]]` and `T = [[1,1],[0,1]]`.
fn standard_generators(p: u32) -> Vec<Mat2> {
    vec![Mat2([0, p - 1, 1, 0]), Mat2([1, 1 % p, 0, 1])]
}

/// `SL(2, 𝔽_p)`.
#[derive(Debug)]
pub struct Sl2 {
    p: u32,
    table: OnceLock<ClassTable<Mat2>>,
}

impl Sl2 {
    pub fn new(p: u32) -> Result<Self, GroupError> {
        check_prime("sl2", p)?;
        Ok(Sl2 {
            p,
            table: OnceLock::new(),
        })
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn table(&self) -> &ClassTable<Mat2> {
        self.table.get_or_init(|| {
            let p = self.p;
            ClassTable::build(
                Mat2([1, 0, 0, 1]),
                &standard_generators(p),
                |a, b| a.mul(b, p),
                |a| a.adjugate(p),
            )
        })
    }
}

impl FiniteGroup for Sl2 {
    type Elem = Mat2;
    type ClassKey = u32;

    fn spec(&self) -> String {
        format!("sl2:{}", self.p)
    }

    fn identity(&self) -> Mat2 {
        Mat2([1, 0, 0, 1])
    }

    fn compose(&self, a: &Mat2, b: &Mat2) -> Mat2 {
        a.mul(b, self.p)
    }

    fn invert(&self, a: &Mat2) -> Mat2 {
        a.adjugate(self.p)
    }

    fn order(&self) -> u64 {
        let p = u64::from(self.p);
        p * (p * p - 1)
    }

    fn generators(&self) -> Vec<Mat2> {
        standard_generators(self.p)
    }

    fn contains(&self, x: &Mat2) -> bool {
        x.0.iter().all(|&e| e < self.p) && x.det(self.p) == 1
    }

    fn class_key(&self, x: &Mat2) -> u32 {
        self.table().class_of(x)
    }

    fn classes(&self) -> Vec<ConjugacyClass<Mat2, u32>> {
        self.table().conjugacy_classes()
    }

    fn for_each_element(&self, f: &mut dyn FnMut(&Mat2)) {
        self.table().elements().iter().for_each(f);
    }

    fn encode(&self, x: &Mat2) -> Value {
        x.encode()
    }

    fn decode(&self, v: &Value) -> Result<Mat2, GroupError> {
        let m = Mat2::decode(v, self.p)?;
        if !self.contains(&m) {
            return Err(GroupError::NotMember(self.spec()));
        }
        Ok(m)
    }

    fn element_order(&self, x: &Mat2) -> u64 {
        self.table().order_of(x)
    }

    /// Conjugation by `diag(ν, 1)` with `ν` a non-residue; with inner
    /// automorphisms this gives `PGL(2, 𝔽_p) = Aut` for `p ≥ 5`.
    fn automorphisms(&self) -> AutSupply<Mat2> {
        let p = self.p;
        match non_residue(p) {
            Some(nu) => AutSupply::inner_only(p >= 5)
                .with("diag(nu,1)", move |x: &Mat2| x.diagonal_conjugate(nu, p)),
            None => AutSupply::inner_only(false),
        }
    }
}

/// `PSL(2, 𝔽_p)`: matrices modulo `±I`, each coset stored by the member whose
/// first nonzero entry lies in `1..=(p−1)/2`.
#[derive(Debug)]
pub struct Psl2 {
    p: u32,
    table: OnceLock<ClassTable<Mat2>>,
}

impl Psl2 {
    pub fn new(p: u32) -> Result<Self, GroupError> {
        check_prime("psl2", p)?;
        Ok(Psl2 {
            p,
            table: OnceLock::new(),
        })
    }

    pub fn canonical(&self, m: Mat2) -> Mat2 {
        let p = self.p;
        if p == 2 {
            return m;
        }
        let first = m.0.iter().copied().find(|&x| x != 0).unwrap_or(0);
        if first > (p - 1) / 2 {
            m.negate(p)
        } else {
            m
        }
    }

    pub fn table(&self) -> &ClassTable<Mat2> {
        self.table.get_or_init(|| {
            let gens: Vec<Mat2> = standard_generators(self.p)
                .into_iter()
                .map(|g| self.canonical(g))
                .collect();
            ClassTable::build(
                self.identity(),
                &gens,
                |a, b| self.compose(a, b),
                |a| self.invert(a),
            )
        })
    }
}

impl FiniteGroup for Psl2 {
    type Elem = Mat2;
    type ClassKey = u32;

    fn spec(&self) -> String {
        format!("psl2:{}", self.p)
    }

    fn identity(&self) -> Mat2 {
        Mat2([1, 0, 0, 1])
    }

    fn compose(&self, a: &Mat2, b: &Mat2) -> Mat2 {
        self.canonical(a.mul(b, self.p))
    }

    fn invert(&self, a: &Mat2) -> Mat2 {
        self.canonical(a.adjugate(self.p))
    }

    fn order(&self) -> u64 {
        let p = u64::from(self.p);
        let sl = p * (p * p - 1);
        if p == 2 {
            sl
        } else {
            sl / 2
        }
    }

    fn generators(&self) -> Vec<Mat2> {
        standard_generators(self.p)
            .into_iter()
            .map(|g| self.canonical(g))
            .collect()
    }

    fn contains(&self, x: &Mat2) -> bool {
        x.0.iter().all(|&e| e < self.p) && x.det(self.p) == 1 && self.canonical(*x) == *x
    }

    fn class_key(&self, x: &Mat2) -> u32 {
        self.table().class_of(x)
    }

    fn classes(&self) -> Vec<ConjugacyClass<Mat2, u32>> {
        self.table().conjugacy_classes()
    }

    fn for_each_element(&self, f: &mut dyn FnMut(&Mat2)) {
        self.table().elements().iter().for_each(f);
    }

    fn encode(&self, x: &Mat2) -> Value {
        x.encode()
    }

    fn decode(&self, v: &Value) -> Result<Mat2, GroupError> {
        let m = Mat2::decode(v, self.p)?;
        if m.det(self.p) != 1 {
            return Err(GroupError::NotMember(self.spec()));
        }
        Ok(self.canonical(m))
    }

    fn element_order(&self, x: &Mat2) -> u64 {
        self.table().order_of(x)
    }

    fn automorphisms(&self) -> AutSupply<Mat2> {
        let p = self.p;
        match non_residue(p) {
            Some(nu) => {
                let canon = Psl2 {
                    p,
                    table: OnceLock::new(),
                };
                AutSupply::inner_only(p >= 5).with("diag(nu,1)", move |x: &Mat2| {
                    canon.canonical(x.diagonal_conjugate(nu, p))
                })
            }
            None => AutSupply::inner_only(false),
        }
    }
}

/// A 3×3 matrix over `𝔽₂`; bit `3i + j` holds entry `(i, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat3F2(pub u16);

impl Mat3F2 {
    pub const IDENTITY: Mat3F2 = Mat3F2(0b100_010_001);

    pub fn from_rows(rows: [[u8; 3]; 3]) -> Self {
        let mut bits = 0u16;
        for (i, row) in rows.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                bits |= u16::from(e & 1) << (3 * i + j);
            }
        }
        Mat3F2(bits)
    }

    pub fn entry(&self, i: usize, j: usize) -> u8 {
        ((self.0 >> (3 * i + j)) & 1) as u8
    }

    pub fn mul(&self, o: &Mat3F2) -> Mat3F2 {
        let mut rows = [[0u8; 3]; 3];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = (0..3).map(|k| self.entry(i, k) & o.entry(k, j)).fold(0, |a, b| a ^ b);
            }
        }
        Mat3F2::from_rows(rows)
    }

    pub fn is_invertible(&self) -> bool {
        // Determinant over F2 by cofactor expansion.
        let e = |i, j| self.entry(i, j);
        let det = e(0, 0) & (e(1, 1) & e(2, 2) ^ e(1, 2) & e(2, 1))
            ^ e(0, 1) & (e(1, 0) & e(2, 2) ^ e(1, 2) & e(2, 0))
            ^ e(0, 2) & (e(1, 0) & e(2, 1) ^ e(1, 1) & e(2, 0));
        self.0 < 512 && det == 1
    }

    pub fn transpose(&self) -> Mat3F2 {
        Mat3F2::from_rows(std::array::from_fn(|i| std::array::from_fn(|j| self.entry(j, i))))
    }

    pub fn rows(&self) -> [[u8; 3]; 3] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.entry(i, j)))
    }
}

/// `GL(3, 𝔽₂)`, of order 168.
#[derive(Debug, Default)]
pub struct Gl3F2 {
    table: OnceLock<ClassTable<Mat3F2>>,
}

impl Gl3F2 {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn table(&self) -> &ClassTable<Mat3F2> {
        self.table.get_or_init(|| {
            ClassTable::build(
                Mat3F2::IDENTITY,
                &self.generators(),
                |a, b| a.mul(b),
                |a| self.invert(a),
            )
        })
    }
}

impl FiniteGroup for Gl3F2 {
    type Elem = Mat3F2;
    type ClassKey = u32;

    fn spec(&self) -> String {
        "gl3f2".to_string()
    }

    fn identity(&self) -> Mat3F2 {
        Mat3F2::IDENTITY
    }

    fn compose(&self, a: &Mat3F2, b: &Mat3F2) -> Mat3F2 {
        a.mul(b)
    }

    fn invert(&self, a: &Mat3F2) -> Mat3F2 {
        // The order of any element divides 168, so a^167 = a^{-1}.
        let mut acc = Mat3F2::IDENTITY;
        for _ in 0..167 {
            acc = acc.mul(a);
        }
        acc
    }

    fn order(&self) -> u64 {
        168
    }

    /// The six elementary transvections `I + E_ij`.
    fn generators(&self) -> Vec<Mat3F2> {
        let mut out = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    out.push(Mat3F2(Mat3F2::IDENTITY.0 | 1 << (3 * i + j)));
                }
            }
        }
        out
    }

    fn contains(&self, x: &Mat3F2) -> bool {
        x.is_invertible()
    }

    fn class_key(&self, x: &Mat3F2) -> u32 {
        self.table().class_of(x)
    }

    fn classes(&self) -> Vec<ConjugacyClass<Mat3F2, u32>> {
        self.table().conjugacy_classes()
    }

    fn for_each_element(&self, f: &mut dyn FnMut(&Mat3F2)) {
        self.table().elements().iter().for_each(f);
    }

    fn encode(&self, x: &Mat3F2) -> Value {
        json!(x.rows())
    }

    fn decode(&self, v: &Value) -> Result<Mat3F2, GroupError> {
        let rows: [[u8; 3]; 3] = serde_json::from_value(v.clone())
            .map_err(|e| GroupError::Decode(format!("expected a 3x3 0/1 matrix: {e}")))?;
        if rows.iter().flatten().any(|&e| e > 1) {
            return Err(GroupError::Decode("entries must be 0 or 1".into()));
        }
        let m = Mat3F2::from_rows(rows);
        if !m.is_invertible() {
            return Err(GroupError::NotMember(self.spec()));
        }
        Ok(m)
    }

    fn element_order(&self, x: &Mat3F2) -> u64 {
        self.table().order_of(x)
    }

    /// The inverse transpose, the graph automorphism.
    fn automorphisms(&self) -> AutSupply<Mat3F2> {
        AutSupply::inner_only(true).with("inverse transpose", |x: &Mat3F2| {
            let mut acc = Mat3F2::IDENTITY;
            for _ in 0..167 {
                acc = acc.mul(x);
            }
            acc.transpose()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        let sl = Sl2::new(11).unwrap();
        assert_eq!(sl.order(), 1320);
        assert_eq!(sl.table().len(), 1320);
        for p in [7, 11, 13] {
            let g = Psl2::new(p).unwrap();
            assert_eq!(g.order(), u64::from(p * (p * p - 1) / 2));
            assert_eq!(g.table().len() as u64, g.order());
        }
        let gl = Gl3F2::new();
        assert_eq!(gl.table().len(), 168);
        assert!(Sl2::new(9).is_err());
    }

    #[test]
    fn class_counts() {
        // SL(2,p) has p + 4 classes, PSL(2,p) has (p + 5)/2 for odd p.
        assert_eq!(Sl2::new(7).unwrap().classes().len(), 11);
        assert_eq!(Sl2::new(11).unwrap().classes().len(), 15);
        assert_eq!(Psl2::new(7).unwrap().classes().len(), 6);
        assert_eq!(Psl2::new(11).unwrap().classes().len(), 8);
        assert_eq!(Gl3F2::new().classes().len(), 6);
        let sl = Sl2::new(11).unwrap();
        let total: u64 = sl.classes().iter().map(|c| c.size).sum();
        assert_eq!(total, 1320);
    }

    #[test]
    fn element_orders_of_sl2_11() {
        let sl = Sl2::new(11).unwrap();
        let mut orders: Vec<u64> = sl.classes().iter().map(|c| c.element_order).collect();
        orders.sort();
        orders.dedup();
        assert_eq!(orders, vec![1, 2, 3, 4, 5, 6, 10, 11, 12, 22]);
    }

    #[test]
    fn psl_canonical_form() {
        let g = Psl2::new(7).unwrap();
        let m = g.decode(&json!([[6, 0], [0, 6]])).unwrap();
        assert_eq!(m, g.identity());
        let x = g.decode(&json!([[0, 1], [-1, 0]])).unwrap();
        assert!(g.contains(&x));
        assert_eq!(g.element_order(&x), 2);
        assert!(g.decode(&json!([[2, 0], [0, 1]])).is_err());
    }

    #[test]
    fn supplied_automorphisms_are_homomorphisms() {
        fn check<G: FiniteGroup>(g: &G)
        where
            G::Elem: 'static,
        {
            let els = g.elements();
            for (_, f) in &g.automorphisms().representatives {
                for a in els.iter().step_by(7) {
                    for b in els.iter().step_by(13) {
                        assert_eq!(f(&g.compose(a, b)), g.compose(&f(a), &f(b)));
                    }
                    assert!(g.contains(&f(a)));
                }
            }
        }
        check(&Sl2::new(7).unwrap());
        check(&Psl2::new(11).unwrap());
        check(&Gl3F2::new());
    }

    #[test]
    fn gl3_inverse() {
        let g = Gl3F2::new();
        g.for_each_element(&mut |x| {
            assert_eq!(x.mul(&g.invert(x)), Mat3F2::IDENTITY);
        });
    }
}
