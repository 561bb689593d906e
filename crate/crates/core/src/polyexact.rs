//! Univariate polynomials with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("constant polynomial has no critical points")]
    Constant,
    #[error("affine map needs a nonzero linear coefficient")]
    DegenerateAffine,
    #[error("not Q-normalizable: the leading coefficient {0} has no rational {1}-th root")]
    NotNormalizable(String, usize),
    #[error("cannot parse coefficient `{0}`")]
    Parse(String),
}

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The variable `z`.
    pub fn z() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `c·z^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `z^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / &lead;
            if !c.is_zero() {
                for (i, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + i] -= &c * d;
                }
            }
            quot[k] = c;
            rem.pop();
        }
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    pub fn divides(&self, other: &RatPoly) -> bool {
        other.div_rem(self).1.is_zero()
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `Q / gcd(Q, Q′)`, monic: the product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> RatPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Substitutes `inner` for `z`.
    pub fn compose(&self, inner: &RatPoly) -> RatPoly {
        self.coeffs.iter().rev().fold(RatPoly::zero(), |acc, c| {
            &(&acc * inner) + &RatPoly::constant(c.clone())
        })
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;

    fn add(self, rhs: &RatPoly) -> RatPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;

    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;

    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;

    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let coeff = if a.is_one() && k > 0 {
                String::new()
            } else if a.is_integer() || k == 0 {
                a.to_string()
            } else {
                format!("({a})")
            };
            match k {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}z")?,
                _ => write!(f, "{coeff}z^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}

/// JSON form: ascending coefficients as `"p/q"` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatPolyJson {
    pub coeffs: Vec<String>,
}

impl From<&RatPoly> for RatPolyJson {
    fn from(p: &RatPoly) -> Self {
        RatPolyJson {
            coeffs: p.coeffs.iter().map(|c| c.to_string()).collect(),
        }
    }
}

impl TryFrom<RatPolyJson> for RatPoly {
    type Error = PolyError;

    fn try_from(j: RatPolyJson) -> Result<Self, PolyError> {
        j.coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()
            .map(RatPoly::new)
    }
}

pub fn parse_rational(text: &str) -> Result<Rational, PolyError> {
    let t = text.trim();
    if t.ends_with("/0") {
        return Err(PolyError::Parse(text.to_string()));
    }
    Rational::from_str(t).map_err(|_| PolyError::Parse(text.to_string()))
}

/// `(T_n, U_{n−1})` from the three-term recurrences.
pub fn chebyshev_pair(n: usize) -> (RatPoly, RatPoly) {
    let z2 = RatPoly::from_ints(&[0, 2]);
    let step = |prev: &RatPoly, cur: &RatPoly| &(&z2 * cur) - prev;
    let (mut t0, mut t1) = (RatPoly::one(), RatPoly::z());
    let (mut u0, mut u1) = (RatPoly::one(), z2.clone());
    for _ in 1..n {
        let t2 = step(&t0, &t1);
        t0 = std::mem::replace(&mut t1, t2);
        let u2 = step(&u0, &u1);
        u0 = std::mem::replace(&mut u1, u2);
    }
    if n == 0 {
        return (RatPoly::one(), RatPoly::zero());
    }
    (t1, u0)
}

/// `Σ_r C(n,2r) z^{n−2r} (z²−1)^r`, the closed form of `T_n`.
pub fn chebyshev_binomial_sum(n: usize) -> RatPoly {
    let w = RatPoly::from_ints(&[-1, 0, 1]);
    let mut binom = BigInt::one();
    let mut out = RatPoly::zero();
    for k in 0..=n {
        if k % 2 == 0 {
            let term = &RatPoly::monomial(Rational::from_integer(binom.clone()), n - k)
                * &w.pow((k / 2) as u32);
            out = &out + &term;
        }
        binom = binom * BigInt::from(n - k) / BigInt::from(k + 1);
    }
    out
}

/// `T_n² − 1 = (z² − 1)·U_{n−1}²`, checked exactly.
pub fn verify_pell_identity(n: usize) -> bool {
    let (t, u) = chebyshev_pair(n);
    let lhs = &(&t * &t) - &RatPoly::one();
    let rhs = &RatPoly::from_ints(&[-1, 0, 1]) * &(&u * &u);
    lhs == rhs
}

/// `z^m (1−z)^r (m+r)^{m+r} / (m^m r^r)`, with value 1 at `m/(m+r)`.
pub fn belyi_poly(m: u32, r: u32) -> RatPoly {
    assert!(m >= 1 && r >= 1, "belyi_poly needs m, r >= 1");
    let big = |x: u32, e: u32| num_traits::pow(BigInt::from(x), e as usize);
    let scale = BigRational::new(big(m + r, m + r), big(m, m) * big(r, r));
    let p = (&RatPoly::monomial(Rational::one(), m as usize)
        * &RatPoly::from_ints(&[1, -1]).pow(r))
        .scale(&scale);
    let q = rat(m as i64, (m + r) as i64);
    assert!(p.eval(&Rational::zero()).is_zero());
    assert!(p.eval(&Rational::one()).is_zero());
    assert!(p.eval(&q).is_one());
    p
}

/// `(3/16)(z⁵ − (10/3)z³ + 5z + 8/3)`, whose derivative is `(15/16)(z²−1)²`.
pub fn special_degree5() -> RatPoly {
    let p = RatPoly::new(vec![
        rat(8, 3),
        int(5),
        int(0),
        rat(-10, 3),
        int(0),
        int(1),
    ])
    .scale(&rat(3, 16));
    let expected_derivative = RatPoly::from_ints(&[-1, 0, 1]).pow(2).scale(&rat(15, 16));
    assert_eq!(p.derivative(), expected_derivative);
    assert!(p.eval(&int(-1)).is_zero());
    assert!(p.eval(&int(1)).is_one());
    p
}

/// Whether every critical value of `P` lies in `values`: the squarefree
/// part of `P′` must divide `∏ (P − c)`.
pub fn critical_values_within(p: &RatPoly, values: &[Rational]) -> Result<bool, PolyError> {
    let d = p.derivative();
    if d.is_zero() {
        return Err(PolyError::Constant);
    }
    let product = values.iter().fold(RatPoly::one(), |acc, c| {
        &acc * &(p - &RatPoly::constant(c.clone()))
    });
    Ok(d.squarefree_part().divides(&product))
}

/// `P(az + b)`.
pub fn apply_affine(p: &RatPoly, a: &Rational, b: &Rational) -> Result<RatPoly, PolyError> {
    if a.is_zero() {
        return Err(PolyError::DegenerateAffine);
    }
    Ok(p.compose(&RatPoly::new(vec![b.clone(), a.clone()])))
}

/// Monic with vanishing `z^{n−1}` coefficient.
pub fn is_normalized(p: &RatPoly) -> bool {
    match p.degree() {
        None => false,
        Some(0) => p.leading().is_one(),
        Some(n) => p.leading().is_one() && p.coeff(n - 1).is_zero(),
    }
}

/// Rational `n`-th root of `x`, if any.
fn rational_root(x: &Rational, n: u32) -> Option<Rational> {
    let root_int = |v: &BigInt| -> Option<BigInt> {
        let neg = v.is_negative();
        if neg && n % 2 == 0 {
            return None;
        }
        let r = v.abs().nth_root(n);
        (num_traits::pow(r.clone(), n as usize) == v.abs()).then(|| if neg { -r } else { r })
    };
    Some(BigRational::new(root_int(x.numer())?, root_int(x.denom())?))
}

/// The normalized polynomial `P(az + b)` with `a` rational, when one exists.
pub fn normalize(p: &RatPoly) -> Result<RatPoly, PolyError> {
    let n = p.degree().ok_or(PolyError::Constant)?;
    if n == 0 {
        return Err(PolyError::Constant);
    }
    let lead = p.leading();
    let a = rational_root(&lead.recip(), n as u32)
        .ok_or_else(|| PolyError::NotNormalizable(lead.to_string(), n))?;
    let b = -p.coeff(n - 1) / (&lead * int(n as i64));
    let q = apply_affine(p, &a, &b)?;
    debug_assert!(is_normalized(&q));
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chebyshev_examples() {
        assert_eq!(chebyshev_pair(1).0, RatPoly::z());
        assert_eq!(chebyshev_pair(3).0, RatPoly::from_ints(&[0, -3, 0, 4]));
        assert_eq!(
            chebyshev_pair(6).0,
            RatPoly::from_ints(&[-1, 0, 18, 0, -48, 0, 32])
        );
        assert_eq!(chebyshev_pair(3).1, RatPoly::from_ints(&[-1, 0, 4]));
        assert_eq!(chebyshev_pair(1).1, RatPoly::one());
    }

    #[test]
    fn chebyshev_matches_cosine() {
        for n in 1..=12 {
            let t = chebyshev_pair(n).0;
            for k in 0..10 {
                let x = -0.95 + 0.21 * k as f64;
                let expected = (n as f64 * x.acos()).cos();
                assert!((t.eval_f64(x) - expected).abs() < 1e-9, "n={n} x={x}");
            }
        }
    }

    #[test]
    fn closed_forms() {
        for n in 1..=15 {
            assert_eq!(chebyshev_binomial_sum(n), chebyshev_pair(n).0, "n={n}");
        }
        // Without the binomial weights the sum at n = 3 is 2z^3 - z.
        let w = RatPoly::from_ints(&[1, 0, -1]);
        let plain = &RatPoly::monomial(int(1), 3) + &(&RatPoly::z() * &w).scale(&int(-1));
        assert_eq!(plain, RatPoly::from_ints(&[0, -1, 0, 2]));
        assert_ne!(plain, chebyshev_pair(3).0);
    }

    #[test]
    fn pell() {
        assert!(verify_pell_identity(1));
        assert!(verify_pell_identity(3));
        assert!(verify_pell_identity(30));
    }

    #[test]
    fn belyi_examples() {
        assert_eq!(belyi_poly(1, 1), RatPoly::from_ints(&[0, 4, -4]));
        assert_eq!(
            belyi_poly(2, 1),
            RatPoly::new(vec![int(0), int(0), rat(27, 4), rat(-27, 4)])
        );
        let p = belyi_poly(3, 2);
        assert_eq!(p.coeff(3), rat(3125, 108));
        assert!(p.eval(&rat(3, 5)).is_one());
    }

    #[test]
    fn degree_five_example() {
        let p = special_degree5();
        assert!(p.eval(&int(1)).is_one());
        assert!(p.eval(&int(-1)).is_zero());
        assert_eq!(p.derivative().squarefree_part(), RatPoly::from_ints(&[-1, 0, 1]));
        assert!(critical_values_within(&p, &[int(0), int(1)]).unwrap());
    }

    #[test]
    fn critical_values() {
        let t6 = chebyshev_pair(6).0;
        assert!(critical_values_within(&t6, &[int(-1), int(1)]).unwrap());
        assert!(!critical_values_within(&t6, &[int(1)]).unwrap());
        let z6 = RatPoly::monomial(int(1), 6);
        assert!(critical_values_within(&z6, &[int(0)]).unwrap());
        let b = belyi_poly(2, 3);
        assert!(critical_values_within(&b, &[int(0), int(1)]).unwrap());
        assert!(!critical_values_within(&b, &[int(0)]).unwrap());
        assert_eq!(
            critical_values_within(&RatPoly::constant(int(3)), &[]),
            Err(PolyError::Constant)
        );
    }

    #[test]
    fn affine() {
        let p = belyi_poly(3, 2);
        assert_eq!(apply_affine(&p, &int(1), &int(0)).unwrap(), p);
        let z2 = RatPoly::monomial(int(1), 2);
        assert_eq!(
            apply_affine(&z2, &int(2), &int(1)).unwrap(),
            RatPoly::from_ints(&[1, 4, 4])
        );
        let t6 = apply_affine(&chebyshev_pair(6).0, &rat(1, 2), &rat(1, 2)).unwrap();
        assert!(critical_values_within(&t6, &[int(-1), int(1)]).unwrap());
        assert_eq!(
            apply_affine(&p, &int(0), &int(1)),
            Err(PolyError::DegenerateAffine)
        );
    }

    #[test]
    fn normalization() {
        assert!(is_normalized(&RatPoly::from_ints(&[0, 0, 0, -2, 0, 0, 1])));
        assert!(!is_normalized(&chebyshev_pair(3).0));
        assert!(is_normalized(&RatPoly::monomial(int(1), 7)));
        // 4z^3 - 3z: leading 4 has no rational cube root.
        assert!(matches!(
            normalize(&chebyshev_pair(3).0),
            Err(PolyError::NotNormalizable(_, 3))
        ));
        // Leading coefficient 32 = 2^5 has a rational fifth root.
        let base = RatPoly::from_ints(&[0, -5, 0, 0, 0, 1]);
        let p = apply_affine(&base, &int(2), &int(1)).unwrap();
        let q = normalize(&p).unwrap();
        assert!(is_normalized(&q));
        assert_eq!(q, base);
        let shifted = apply_affine(&RatPoly::monomial(int(1), 4), &int(1), &int(3)).unwrap();
        assert_eq!(normalize(&shifted).unwrap(), RatPoly::monomial(int(1), 4));
    }

    #[test]
    fn display_and_json() {
        assert_eq!(chebyshev_pair(3).0.to_string(), "4z^3 - 3z");
        assert_eq!(special_degree5().to_string(), "(3/16)z^5 - (5/8)z^3 + (15/16)z + 1/2");
        let j = RatPolyJson::from(&belyi_poly(2, 1));
        assert_eq!(j.coeffs, vec!["0", "0", "27/4", "-27/4"]);
        assert_eq!(RatPoly::try_from(j).unwrap(), belyi_poly(2, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
