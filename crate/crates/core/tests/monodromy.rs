use std::collections::BTreeMap;

use belyi_core::monodromy::{
    belyi_pair, chebycheff_pair, classify, enumerate_factorizations, exhaustive_scan, is_real_class,
    monodromy_group_order, table6, BranchDatum, MonodromyPair, PolynomialClassKind,
};
use belyi_core::perm::simultaneous_conjugator;
use belyi_core::{CycleType, Permutation};

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn aut(t: &CycleType) -> u64 {
    let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
    for &p in t.parts() {
        *mult.entry(p).or_default() += 1;
    }
    mult.values().map(|&m| factorial(m)).product()
}

/// Genus-zero factorizations of the long cycle into types `λ`, `μ` with
/// `ℓ(λ) + ℓ(μ) = n + 1`: `n (ℓ(λ)−1)! (ℓ(μ)−1)! / (|Aut λ| |Aut μ|)`.
fn goulden_jackson(n: usize, l: &CycleType, m: &CycleType) -> u64 {
    n as u64 * factorial(l.cycle_count() - 1) * factorial(m.cycle_count() - 1) / (aut(l) * aut(m))
}

fn all_permutations(n: usize) -> Vec<Permutation> {
    fn rec(cur: &mut Vec<u32>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
        if cur.len() == used.len() {
            out.push(Permutation::from_images(cur.clone()).unwrap());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i as u32);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

#[test]
fn factorization_counts_match_closed_form() {
    for n in 2..=8 {
        for row in exhaustive_scan(n, 9).unwrap() {
            let d = &row.datum;
            assert_eq!(
                row.factorizations as u64,
                goulden_jackson(n, &d.type0, &d.type1),
                "degree {n}, datum {d}"
            );
        }
    }
}

#[test]
fn brute_force_over_pairs_agrees_for_small_degree() {
    for n in 2..=5 {
        let sigma = Permutation::long_cycle(n);
        let perms = all_permutations(n);
        let mut counts: BTreeMap<(CycleType, CycleType), usize> = BTreeMap::new();
        for a in &perms {
            for b in &perms {
                if a.compose(b) != sigma || a.is_identity() || b.is_identity() {
                    continue;
                }
                if a.cycle_type().deficiency() + b.cycle_type().deficiency() == n - 1 {
                    *counts.entry((a.cycle_type(), b.cycle_type())).or_default() += 1;
                }
            }
        }
        let scanned: BTreeMap<(CycleType, CycleType), usize> = exhaustive_scan(n, 9)
            .unwrap()
            .into_iter()
            .map(|r| ((r.datum.type0, r.datum.type1), r.factorizations))
            .collect();
        assert_eq!(scanned, counts, "degree {n}");
    }
}

#[test]
fn low_degree_classes_are_chebycheff_or_belyi() {
    for n in 2..=4 {
        for row in exhaustive_scan(n, 9).unwrap() {
            assert_ne!(row.kind, PolynomialClassKind::Other, "degree {n}: {}", row.datum);
        }
    }
}

#[test]
fn degree_five_other_kinds() {
    let others: Vec<String> = exhaustive_scan(5, 9)
        .unwrap()
        .into_iter()
        .filter(|r| r.kind == PolynomialClassKind::Other)
        .map(|r| r.datum.to_string())
        .collect();
    assert!(others.contains(&BranchDatum::parse("3,1,1", "3,1,1").unwrap().to_string()));
    // Three-cycle against two transpositions also occurs, in both orders.
    assert_eq!(others.len(), 3, "{others:?}");
}

#[test]
fn degree_six_table() {
    let reference = [("I", 3), ("II", 18), ("III", 9), ("IV", 2), ("V", 12), ("VI", 6)];
    let rows = table6();
    assert_eq!(rows.len(), 6);
    for (row, (case, count)) in rows.iter().zip(reference) {
        assert_eq!(row.case, case);
        assert_eq!(row.reference, count);
        assert!(row.matches, "case {case}: {} / {}", row.count, row.swapped_count);
        assert_eq!(
            row.count as u64,
            goulden_jackson(6, &row.datum.type0, &row.datum.type1)
        );
    }
}

/// Case I by hand: `τ₁` of type `(2,2,2)` with `τ₀ = σ τ₁⁻¹` of type
/// `(2,2,1,1)`; the fixed-point-free involutions are few enough to list.
#[test]
fn case_one_by_involutions() {
    let sigma = Permutation::long_cycle(6);
    let matchings = [
        [(1, 2), (3, 4), (5, 6)],
        [(1, 2), (3, 5), (4, 6)],
        [(1, 2), (3, 6), (4, 5)],
        [(1, 3), (2, 4), (5, 6)],
        [(1, 3), (2, 5), (4, 6)],
        [(1, 3), (2, 6), (4, 5)],
        [(1, 4), (2, 3), (5, 6)],
        [(1, 4), (2, 5), (3, 6)],
        [(1, 4), (2, 6), (3, 5)],
        [(1, 5), (2, 3), (4, 6)],
        [(1, 5), (2, 4), (3, 6)],
        [(1, 5), (2, 6), (3, 4)],
        [(1, 6), (2, 3), (4, 5)],
        [(1, 6), (2, 4), (3, 5)],
        [(1, 6), (2, 5), (3, 4)],
    ];
    let target = CycleType::parse("2,2,1,1").unwrap();
    let count = matchings
        .iter()
        .filter(|m| {
            let cycles: Vec<Vec<u32>> = m.iter().map(|&(a, b)| vec![a, b]).collect();
            let t1 = Permutation::from_cycles(&cycles, 6).unwrap();
            sigma.compose(&t1.inverse()).cycle_type() == target
        })
        .count();
    let d = BranchDatum::parse("2,2,1,1", "2,2,2").unwrap();
    assert_eq!(count, 3);
    assert_eq!(enumerate_factorizations(&d, 6).unwrap().pairs.len(), count);
}

fn pair(t0: &str, t1: &str) -> MonodromyPair {
    MonodromyPair::parse(t0, t1, 6).unwrap()
}

#[test]
fn non_real_degree_six_pairs() {
    for p in [pair("(1,3,6)(4,5)", "(1,2)(3,5)"), pair("(5,6)(1,2,3)", "(3,4,6)")] {
        let q = if p.validate().is_valid() { p.clone() } else { p.swapped() };
        assert!(q.validate().is_valid(), "{p:?}");
        let inverted = simultaneous_conjugator(&[
            (q.tau0.clone(), q.tau0.inverse()),
            (q.tau1.clone(), q.tau1.inverse()),
        ]);
        assert!(inverted.is_none());
        assert!(!is_real_class(&q, true).unwrap());
    }
}

#[test]
fn chebycheff_classes_are_real_and_dihedral() {
    for n in 2..=8 {
        let p = chebycheff_pair(n);
        assert!(p.validate().is_valid());
        let kind = classify(&p.datum());
        if n >= 5 {
            assert_eq!(kind, PolynomialClassKind::Chebycheff);
        } else {
            assert_ne!(kind, PolynomialClassKind::Other);
        }
        assert!(is_real_class(&p, true).unwrap());
        if n >= 3 {
            assert_eq!(monodromy_group_order(&p, 10_000).unwrap(), 2 * n);
        }
    }
}

#[test]
fn belyi_pairs_are_valid() {
    for m in 1..=6 {
        for r in 1..=6 {
            let p = belyi_pair(m, r);
            assert!(p.validate().is_valid(), "({m},{r})");
            assert_eq!(classify(&p.datum()), PolynomialClassKind::Belyi);
        }
    }
}

#[test]
fn degree_guard_is_enforced() {
    let d = BranchDatum::parse("2,1,1,1,1,1,1,1,1", "9,1").unwrap();
    assert!(enumerate_factorizations(&d, 9).is_err());
}
