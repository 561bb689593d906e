use std::collections::BTreeSet;

use belyi_core::diffpoly::{cheb_sum, component_orbits, fano, gcd_branches, projection_check, schur, BranchAction, ProductMonodromy};
use belyi_core::Permutation;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Orbit sizes by breadth-first search on the grid.
fn bfs_orbit_sizes(pm: &ProductMonodromy) -> Vec<usize> {
    let mut seen = vec![vec![false; pm.m]; pm.n];
    let mut sizes = Vec::new();
    for x0 in 0..pm.n {
        for y0 in 0..pm.m {
            if seen[x0][y0] {
                continue;
            }
            seen[x0][y0] = true;
            let mut stack = vec![(x0, y0)];
            let mut size = 0;
            while let Some((x, y)) = stack.pop() {
                size += 1;
                for l in &pm.labels {
                    let (u, v) = (l.tau.apply(x), l.rho.apply(y));
                    if !seen[u][v] {
                        seen[u][v] = true;
                        stack.push((u, v));
                    }
                }
            }
            sizes.push(size);
        }
    }
    sizes.sort_unstable();
    sizes
}

fn sorted_sizes(pm: &ProductMonodromy) -> Vec<usize> {
    let mut s: Vec<usize> = component_orbits(pm).unwrap().iter().map(|o| o.size).collect();
    s.sort_unstable();
    s
}

#[test]
fn chebyshev_sum_has_n_orbits_of_size_4n() {
    for n in 1..=12 {
        let pm = cheb_sum(n);
        let orbits = component_orbits(&pm).unwrap();
        assert_eq!(orbits.len(), n, "n = {n}");
        assert!(orbits.iter().all(|o| o.size == 4 * n));
        assert_eq!(sorted_sizes(&pm), bfs_orbit_sizes(&pm));
    }
}

#[test]
fn schur_factor_counts() {
    for n in 2..=20 {
        let (pm, count) = schur(n).unwrap();
        let expected = if n % 2 == 1 { (n - 1) / 2 } else { n / 2 };
        assert_eq!(count.factor_count, expected, "n = {n}");
        assert_eq!(sorted_sizes(&pm), bfs_orbit_sizes(&pm));
    }
}

#[test]
fn fano_orbits() {
    let pm = fano();
    let orbits = component_orbits(&pm).unwrap();
    let found: BTreeSet<(usize, (usize, usize))> = orbits.iter().map(|o| (o.size, o.bidegree)).collect();
    assert_eq!(found, BTreeSet::from([(21, (3, 3)), (28, (4, 4))]));
    let check = projection_check(&pm, 10_000).unwrap();
    assert_eq!(check.left_group_order, 168);
    assert!(check.left_surjective && check.right_surjective);
    // Equal degrees yet reducible: gcd 7 leaves room for it.
    assert!(!gcd_branches(7, 7).irreducible_advisory);
}

#[test]
fn coprime_degrees_force_irreducibility() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (n, m) in [(3, 4), (5, 7), (4, 9)] {
        let mut imgs: Vec<u32> = (0..m as u32).collect();
        imgs.shuffle(&mut rng);
        let pm = ProductMonodromy::new(
            n,
            m,
            vec![
                BranchAction { name: "inf".into(), tau: Permutation::long_cycle(n), rho: Permutation::long_cycle(m) },
                BranchAction { name: "r".into(), tau: Permutation::identity(n), rho: Permutation::from_images(imgs).unwrap() },
            ],
        )
        .unwrap();
        assert!(gcd_branches(n as u64, m as u64).irreducible_advisory);
        assert_eq!(component_orbits(&pm).unwrap().len(), 1);
    }
}

fn random_perm(k: usize, rng: &mut ChaCha8Rng) -> Permutation {
    let mut imgs: Vec<u32> = (0..k as u32).collect();
    imgs.shuffle(rng);
    Permutation::from_images(imgs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn orbit_sizes_partition_the_grid(n in 1usize..=8, m in 1usize..=8, extra in 0usize..3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut labels = vec![BranchAction {
            name: "inf".into(),
            tau: Permutation::long_cycle(n),
            rho: Permutation::long_cycle(m),
        }];
        for i in 0..extra {
            labels.push(BranchAction { name: i.to_string(), tau: random_perm(n, &mut rng), rho: random_perm(m, &mut rng) });
        }
        let pm = ProductMonodromy::new(n, m, labels).unwrap();
        let orbits = component_orbits(&pm).unwrap();
        prop_assert_eq!(orbits.iter().map(|o| o.size).sum::<usize>(), n * m);
        for o in &orbits {
            prop_assert_eq!(o.size, o.bidegree.0 * m);
            prop_assert_eq!(o.size, o.bidegree.1 * n);
        }
        prop_assert_eq!(sorted_sizes(&pm), bfs_orbit_sizes(&pm));
    }
}
