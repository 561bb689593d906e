use belyi_core::polyexact::{
    belyi_poly, chebyshev_pair, critical_values_within, int, is_normalized, normalize, rat, special_degree5,
    verify_pell_identity, RatPoly,
};
use num_traits::{One, Zero};

#[test]
fn chebyshev_matches_cosine_oracle() {
    for n in 0..=20usize {
        let (t, _) = chebyshev_pair(n);
        for k in 0..=16 {
            let theta = k as f64 * 0.37;
            let lhs = t.eval_f64(theta.cos());
            assert!((lhs - (n as f64 * theta).cos()).abs() < 1e-8, "n = {n}, theta = {theta}");
        }
    }
}

#[test]
fn chebyshev_identities() {
    for n in 2..=30 {
        assert!(verify_pell_identity(n), "n = {n}");
        let (t, _) = chebyshev_pair(n);
        assert!(critical_values_within(&t, &[int(-1), int(1)]).unwrap());
        let d = t.derivative();
        assert_eq!(d.squarefree_part().degree(), d.degree(), "T_{n}' squarefree");
        assert_eq!(t.leading(), rat(1 << (n - 1), 1));
    }
}

#[test]
fn chebyshev_has_extra_critical_value_when_perturbed() {
    let (t, _) = chebyshev_pair(5);
    let shifted = &t + &RatPoly::z();
    assert!(!critical_values_within(&shifted, &[int(-1), int(1)]).unwrap());
}

#[test]
fn belyi_values() {
    for m in 1..=8u32 {
        for r in 1..=8u32 {
            let p = belyi_poly(m, r);
            assert!(p.eval(&int(0)).is_zero());
            assert!(p.eval(&int(1)).is_zero());
            assert!(p.eval(&rat(m as i64, (m + r) as i64)).is_one());
            assert!(critical_values_within(&p, &[int(0), int(1)]).unwrap());
            assert_eq!(p.degree(), Some((m + r) as usize));
        }
    }
}

#[test]
fn special_quintic() {
    let p = special_degree5();
    assert!(p.eval(&int(-1)).is_zero());
    assert!(p.eval(&int(1)).is_one());
    // (15/16)(z² − 1)² expanded by hand.
    let expected = RatPoly::new(vec![rat(15, 16), int(0), rat(-30, 16), int(0), rat(15, 16)]);
    assert_eq!(p.derivative(), expected);
    assert!(critical_values_within(&p, &[int(0), int(1)]).unwrap());
}

#[test]
fn normalization() {
    let p = RatPoly::from_ints(&[3, 2, 1]);
    let q = normalize(&p).unwrap();
    assert!(is_normalized(&q));
    assert_eq!(q, RatPoly::from_ints(&[2, 0, 1]));
    assert!(normalize(&RatPoly::from_ints(&[0, 0, 2])).is_err());
}
