use std::collections::BTreeSet;

use belyi_core::beauville::{
    abelian_criterion, find_prime, genus_triangle, h4_lemma_check, is_mixed, is_unmixed, reality_verdict,
    search_h4_quadruple, search_unmixed, sigma_keys, sigma_set, sn_example, type_of, MixedQuadruple, Reality,
    SearchOptions, SearchOutcome, SigmaSet, Structure, TypeTriple,
};
use belyi_core::groups::{FiniteGroup, H4Group, PermGroup, Psl2, Sl2, ZnxZn, DEFAULT_BUDGET};
use belyi_core::Permutation;
use num_rational::Ratio;
use proptest::prelude::*;

/// `Σ(a, c)` by conjugating every power of `a`, `c`, `ac` by every element.
fn brute_sigma<G: FiniteGroup>(g: &G, a: &G::Elem, c: &G::Elem) -> BTreeSet<G::Elem> {
    let elems = g.elements();
    let mut out = BTreeSet::new();
    for x in [a.clone(), c.clone(), g.compose(a, c)] {
        let mut y = g.identity();
        loop {
            for h in &elems {
                out.insert(g.compose(&g.compose(h, &y), &g.invert(h)));
            }
            y = g.compose(&y, &x);
            if y == g.identity() {
                break;
            }
        }
    }
    out
}

fn found<G: FiniteGroup>(g: &G) -> (Structure<G::Elem>, [TypeTriple; 2]) {
    match search_unmixed(g, &SearchOptions::default()) {
        SearchOutcome::Found { structure, types, .. } => (structure, types),
        other => panic!("{}: {other:?}", g.spec()),
    }
}

#[test]
fn genus_matches_riemann_hurwitz() {
    for (order, t) in [(168u64, (3u64, 3, 7)), (60, (2, 5, 5)), (25, (5, 5, 5)), (336, (7, 7, 3)), (5040, (7, 2, 6))] {
        let tt = TypeTriple::new(t.0, t.1, t.2);
        let g = genus_triangle(order, tt).unwrap();
        // 2g − 2 = |G| (1 − 1/r − 1/s − 1/t).
        assert_eq!(
            Ratio::new(2 * g as i64 - 2, 1),
            Ratio::new(order as i64, 1)
                * (Ratio::new(1, 1) - Ratio::new(1, t.0 as i64) - Ratio::new(1, t.1 as i64) - Ratio::new(1, t.2 as i64)),
        );
    }
    assert!(genus_triangle(60, TypeTriple::new(7, 7, 7)).is_err());
}

#[test]
fn abelian_search_follows_gcd_rule() {
    for n in 2..=8u32 {
        let g = ZnxZn::new(n).unwrap();
        let outcome = search_unmixed(&g, &SearchOptions::default());
        let has = matches!(outcome, SearchOutcome::Found { .. });
        assert_eq!(has, abelian_criterion(n as u64), "n = {n}: {outcome:?}");
        assert_eq!(has, num_integer::gcd(n, 6) == 1);
    }
}

#[test]
fn found_structures_reverify_and_are_hyperbolic() {
    let g = Psl2::new(7).unwrap();
    let (v, types) = found(&g);
    assert!(is_unmixed(&g, &v, DEFAULT_BUDGET).unwrap().valid);
    for t in types {
        assert!(t.is_hyperbolic());
        assert!(genus_triangle(g.order(), t).unwrap() >= 2);
    }
    let g = Sl2::new(7).unwrap();
    let (v, _) = found(&g);
    assert!(is_unmixed(&g, &v, DEFAULT_BUDGET).unwrap().valid);
}

#[test]
fn s8_example_is_not_real() {
    let ex = sn_example(8, 5).unwrap();
    assert!(ex.verified());
    assert_eq!(ex.reality.verdict, Reality::NotIsomorphicToConjugate);
    assert!(sn_example(7, 3).is_err());
    assert!(sn_example(9, 3).is_err());
}

#[test]
fn abelian_structures_are_real() {
    let g = ZnxZn::new(5).unwrap();
    let (v, _) = found(&g);
    let r = reality_verdict(&g, &v, &g.automorphisms());
    assert_eq!(r.verdict, Reality::RealIsomorphic);
}

#[test]
fn h4_hypotheses_report_witnesses() {
    let h = Sl2::new(5).unwrap();
    let e = h.elements();
    let odd = e.iter().find(|x| h.element_order(x) == 3).unwrap().clone();
    let h4 = H4Group::new(h).unwrap();
    let report = h4_lemma_check(&h4, &odd, &odd, &odd, &odd, false).unwrap();
    assert!(!report.holds());
    let first = &report.hypotheses[0];
    assert!(!first.holds);
    assert!(first.witness.as_deref().unwrap().contains("odd"));
    assert!(report.quadruple.is_none());
}

#[test]
fn h4_search_gives_a_mixed_structure_over_sl2_11() {
    let h = Sl2::new(11).unwrap();
    let s = search_h4_quadruple(&h).expect("a compliant quadruple");
    let h4 = H4Group::new(h).unwrap();
    assert_eq!(h4.order(), 6_969_600);
    let report = h4_lemma_check(&h4, &s.a1, &s.c1, &s.a2, &s.c2, true).unwrap();
    assert!(report.holds());
    assert_eq!(report.mixed.unwrap().conditions, [true; 4]);
}

#[test]
fn prime_finder() {
    for n in 5..=200 {
        let p = find_prime(n, None).unwrap_or_else(|| panic!("n = {n}"));
        assert!(p % 2 == 1 && n % p > 1);
    }
    assert_eq!(find_prime(11, None), Some(3));
    assert_eq!(find_prime(7, Some(4)), None);
}

fn cyclic_pair_group(n: usize) -> (PermGroup, PermGroup) {
    // Z/n × Z/n × Z/2 on disjoint blocks of n, n and 2 points.
    let deg = 2 * n + 2;
    let shift = |offset: usize, len: usize| {
        let mut imgs: Vec<u32> = (0..deg as u32).collect();
        for i in 0..len {
            imgs[offset + i] = (offset + (i + 1) % len) as u32;
        }
        Permutation::from_images(imgs).unwrap()
    };
    let x = shift(0, n);
    let y = shift(n, n);
    let z = shift(2 * n, 2);
    let g = PermGroup::new("znxznxz2", deg, vec![x.clone(), y.clone(), z], 10_000).unwrap();
    let g0 = PermGroup::new("znxzn", deg, vec![x, y], 10_000).unwrap();
    (g, g0)
}

fn no_mixed_quadruple(g: &PermGroup, g0: &PermGroup) {
    let inside = g0.elements();
    let outside: Vec<Permutation> = g.elements().into_iter().filter(|x| !g0.contains(x)).collect();
    for a in &inside {
        for c in &inside {
            for t in &outside {
                let m = MixedQuadruple { a: a.clone(), c: c.clone(), g: t.clone() };
                assert!(!is_mixed(g, g0, &m, DEFAULT_BUDGET).unwrap().valid, "{}", g.spec());
            }
        }
    }
}

#[test]
fn no_mixed_quadruple_on_dihedral_groups() {
    for n in 3..=7 {
        let g = PermGroup::dihedral(n).unwrap();
        let g0 = PermGroup::new("rotations", n, vec![Permutation::long_cycle(n)], 100).unwrap();
        no_mixed_quadruple(&g, &g0);
    }
}

#[test]
fn no_mixed_quadruple_on_abelian_times_z2() {
    for n in [2, 3, 5] {
        let (g, g0) = cyclic_pair_group(n);
        no_mixed_quadruple(&g, &g0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sigma_agrees_with_brute_force_and_is_conjugation_invariant(i in 0usize..10_000, j in 0usize..10_000, k in 0usize..10_000) {
        let g = Psl2::new(7).unwrap();
        let e = g.elements();
        let (a, c, h) = (&e[i % e.len()], &e[j % e.len()], &e[k % e.len()]);
        let SigmaSet::Explicit(listed) = sigma_set(&g, a, c, 1000) else { panic!("small group") };
        prop_assert_eq!(&listed, &brute_sigma(&g, a, c));
        let (ca, cc) = (g.conjugate(a, h), g.conjugate(c, h));
        prop_assert_eq!(sigma_keys(&g, &ca, &cc), sigma_keys(&g, a, c));
        prop_assert_eq!(type_of(&g, &ca, &cc), type_of(&g, a, c));
    }

    #[test]
    fn unmixed_verdict_is_invariant_under_pairwise_conjugation(j in 0usize..10_000, k in 0usize..10_000) {
        let g = Sl2::new(7).unwrap();
        let v = found(&g).0;
        let e = g.elements();
        let (h1, h2) = (&e[j % e.len()], &e[k % e.len()]);
        let w = Structure {
            a1: g.conjugate(&v.a1, h1),
            c1: g.conjugate(&v.c1, h1),
            a2: g.conjugate(&v.a2, h2),
            c2: g.conjugate(&v.c2, h2),
        };
        prop_assert!(is_unmixed(&g, &w, DEFAULT_BUDGET).unwrap().valid);
        let swapped = Structure { a1: w.a2.clone(), c1: w.c2.clone(), a2: w.a1.clone(), c2: w.c1.clone() };
        prop_assert!(is_unmixed(&g, &swapped, DEFAULT_BUDGET).unwrap().valid);
    }
}
