use std::collections::{BTreeMap, BTreeSet};

use belyi_core::groups::{
    AltGroup, FiniteGroup, Gl3F2, Generation, H4Group, PermGroup, Psl2, Sl2, SymGroup, ZnxZn, DEFAULT_BUDGET,
};
use belyi_core::perm::simultaneous_conjugator;
use belyi_core::Permutation;
use proptest::prelude::*;

/// Conjugacy classes by brute force: orbits of the elements under `x ↦ gxg⁻¹`.
fn brute_classes<G: FiniteGroup>(g: &G) -> Vec<BTreeSet<G::Elem>> {
    let elems = g.elements();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for x in &elems {
        if seen.contains(x) {
            continue;
        }
        let class: BTreeSet<G::Elem> = elems.iter().map(|h| g.compose(&g.compose(h, x), &g.invert(h))).collect();
        seen.extend(class.iter().cloned());
        out.push(class);
    }
    out
}

fn keys_match_classes<G: FiniteGroup>(g: &G) {
    let classes = brute_classes(g);
    let mut key_of: BTreeMap<G::ClassKey, usize> = BTreeMap::new();
    for (i, class) in classes.iter().enumerate() {
        for x in class {
            let k = g.class_key(x);
            let prev = key_of.insert(k, i);
            assert!(prev.is_none() || prev == Some(i), "{}: key shared across classes", g.spec());
        }
    }
    assert_eq!(key_of.len(), classes.len(), "{}: class count", g.spec());
    assert_eq!(g.classes().len(), classes.len(), "{}: classes()", g.spec());
}

#[test]
fn matrix_group_orders_follow_closed_forms() {
    for p in [3u32, 5, 7, 11, 13] {
        let q = p as u64;
        assert_eq!(Sl2::new(p).unwrap().order(), q * (q * q - 1));
        assert_eq!(Psl2::new(p).unwrap().order(), q * (q * q - 1) / 2);
    }
    assert_eq!(Gl3F2::new().order(), 168);
}

#[test]
fn matrix_class_counts_follow_closed_forms() {
    // SL(2,p) has p + 4 classes and PSL(2,p) has (p + 5)/2 for odd p.
    for p in [5u32, 7, 11, 13] {
        assert_eq!(Sl2::new(p).unwrap().classes().len() as u32, p + 4);
        assert_eq!(Psl2::new(p).unwrap().classes().len() as u32, (p + 5) / 2);
    }
}

#[test]
fn class_keys_agree_with_brute_force() {
    keys_match_classes(&SymGroup::new(5).unwrap());
    keys_match_classes(&AltGroup::new(5).unwrap());
    keys_match_classes(&AltGroup::new(6).unwrap());
    keys_match_classes(&Sl2::new(5).unwrap());
    keys_match_classes(&Psl2::new(7).unwrap());
    keys_match_classes(&Gl3F2::new());
    keys_match_classes(&ZnxZn::new(4).unwrap());
    keys_match_classes(&PermGroup::dihedral(6).unwrap());
    keys_match_classes(&H4Group::new(SymGroup::new(3).unwrap()).unwrap());
}

#[test]
fn symmetric_and_alternating_orders() {
    let fact = |n: u64| (1..=n).product::<u64>();
    for n in 2..=9 {
        assert_eq!(SymGroup::new(n as usize).unwrap().order(), fact(n));
        if n >= 3 {
            assert_eq!(AltGroup::new(n as usize).unwrap().order(), fact(n) / 2);
        }
    }
}

#[test]
fn generation_examples() {
    let s8 = SymGroup::new(8).unwrap();
    let sigma = Permutation::long_cycle(8);
    let tau = Permutation::from_cycles(&[vec![1, 2]], 8).unwrap();
    assert_eq!(s8.generates(&[sigma.clone(), tau], DEFAULT_BUDGET), Generation::Yes);
    let tau13 = Permutation::from_cycles(&[vec![1, 3]], 8).unwrap();
    // (1,3) with the 8-cycle preserves the parity classes of points.
    assert_eq!(s8.generates(&[sigma, tau13], DEFAULT_BUDGET), Generation::No);
}

#[test]
fn h4_order_is_fourth_power_times_four() {
    let h = Sl2::new(5).unwrap();
    let n = h.order();
    let h4 = H4Group::new(h).unwrap();
    assert_eq!(h4.order(), 4 * n * n);
    assert_eq!(h4.h2().order(), 2 * n * n);
}

fn group_axioms<G: FiniteGroup>(g: &G, x: &G::Elem, y: &G::Elem, z: &G::Elem) {
    let e = g.identity();
    assert_eq!(g.compose(x, &e), *x);
    assert_eq!(g.compose(&e, x), *x);
    assert_eq!(g.compose(x, &g.invert(x)), e);
    assert_eq!(g.compose(&g.compose(x, y), z), g.compose(x, &g.compose(y, z)));
    assert!(g.contains(&g.compose(x, y)));
}

fn invariants<G: FiniteGroup>(g: &G, x: &G::Elem, h: &G::Elem) {
    let conj = g.conjugate(x, h);
    assert_eq!(g.class_key(&conj), g.class_key(x));
    assert!(g.conjugacy_related(x, &conj));
    assert_eq!(g.element_order(&conj), g.element_order(x));
    assert_eq!(g.pow(x, g.element_order(x)), g.identity());
    assert_eq!(g.decode(&g.encode(x)).unwrap(), *x);
}

fn pick<G: FiniteGroup>(elems: &[G::Elem], i: usize) -> G::Elem {
    elems[i % elems.len()].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn axioms_and_conjugacy_invariants(i in 0usize..100_000, j in 0usize..100_000, k in 0usize..100_000) {
        let s6 = SymGroup::new(6).unwrap();
        let e = s6.elements();
        let (x, y, z) = (pick::<SymGroup>(&e, i), pick::<SymGroup>(&e, j), pick::<SymGroup>(&e, k));
        group_axioms(&s6, &x, &y, &z);
        invariants(&s6, &x, &y);

        let a6 = AltGroup::new(6).unwrap();
        let e = a6.elements();
        let (x, y, z) = (pick::<AltGroup>(&e, i), pick::<AltGroup>(&e, j), pick::<AltGroup>(&e, k));
        group_axioms(&a6, &x, &y, &z);
        invariants(&a6, &x, &y);

        let sl = Sl2::new(7).unwrap();
        let e = sl.elements();
        let (x, y, z) = (pick::<Sl2>(&e, i), pick::<Sl2>(&e, j), pick::<Sl2>(&e, k));
        group_axioms(&sl, &x, &y, &z);
        invariants(&sl, &x, &y);

        let psl = Psl2::new(11).unwrap();
        let e = psl.elements();
        let (x, y, z) = (pick::<Psl2>(&e, i), pick::<Psl2>(&e, j), pick::<Psl2>(&e, k));
        group_axioms(&psl, &x, &y, &z);
        invariants(&psl, &x, &y);

        let gl = Gl3F2::new();
        let e = gl.elements();
        let (x, y, z) = (pick::<Gl3F2>(&e, i), pick::<Gl3F2>(&e, j), pick::<Gl3F2>(&e, k));
        group_axioms(&gl, &x, &y, &z);
        invariants(&gl, &x, &y);

        let ab = ZnxZn::new(9).unwrap();
        let e = ab.elements();
        let (x, y, z) = (pick::<ZnxZn>(&e, i), pick::<ZnxZn>(&e, j), pick::<ZnxZn>(&e, k));
        group_axioms(&ab, &x, &y, &z);
        invariants(&ab, &x, &y);

        let h4 = H4Group::new(SymGroup::new(3).unwrap()).unwrap();
        let e = h4.elements();
        let (x, y, z) = (pick::<H4Group<SymGroup>>(&e, i), pick::<H4Group<SymGroup>>(&e, j), pick::<H4Group<SymGroup>>(&e, k));
        group_axioms(&h4, &x, &y, &z);
        invariants(&h4, &x, &y);
    }

    #[test]
    fn simultaneous_conjugator_finds_planted_conjugator(i in 0usize..5040, j in 0usize..5040, k in 0usize..5040) {
        let s7 = SymGroup::new(7).unwrap();
        let e = s7.elements();
        let (x, y, h) = (pick::<SymGroup>(&e, i), pick::<SymGroup>(&e, j), pick::<SymGroup>(&e, k));
        let pairs = [(x.clone(), x.conjugate_by(&h)), (y.clone(), y.conjugate_by(&h))];
        let g = simultaneous_conjugator(&pairs).expect("h is a witness");
        prop_assert_eq!(x.conjugate_by(&g), x.conjugate_by(&h));
        prop_assert_eq!(y.conjugate_by(&g), y.conjugate_by(&h));
    }
}
