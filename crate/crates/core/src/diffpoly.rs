//! Factor counts of difference polynomials `f(x) − g(y)`.
//!
//! Irreducible factors correspond to orbits of the diagonal monodromy action
//! on the grid `{1..n} × {1..m}`. Residues `r ∈ ℤ/k` are point `r + 1`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{closure, is_transitive, ClosureOverflow, PermError, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiffError {
    #[error("label `{label}`: expected degrees ({n}, {m}), got ({got_n}, {got_m})")]
    Degree {
        label: String,
        n: usize,
        m: usize,
        got_n: usize,
        got_m: usize,
    },
    #[error("orbit through ({x}, {y}) has non-constant fibre sizes")]
    FibreSizes { x: usize, y: usize },
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Closure(#[from] ClosureOverflow),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchAction {
    pub name: String,
    pub tau: Permutation,
    pub rho: Permutation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductMonodromy {
    pub n: usize,
    pub m: usize,
    pub labels: Vec<BranchAction>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchActionJson {
    pub name: String,
    pub tau: Vec<Vec<u32>>,
    pub rho: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductMonodromyJson {
    pub n: usize,
    pub m: usize,
    pub labels: Vec<BranchActionJson>,
}

impl From<&ProductMonodromy> for ProductMonodromyJson {
    fn from(pm: &ProductMonodromy) -> Self {
        ProductMonodromyJson {
            n: pm.n,
            m: pm.m,
            labels: pm
                .labels
                .iter()
                .map(|l| BranchActionJson {
                    name: l.name.clone(),
                    tau: l.tau.to_cycles_one_based(),
                    rho: l.rho.to_cycles_one_based(),
                })
                .collect(),
        }
    }
}

impl TryFrom<ProductMonodromyJson> for ProductMonodromy {
    type Error = DiffError;

    fn try_from(j: ProductMonodromyJson) -> Result<Self, DiffError> {
        let labels = j
            .labels
            .into_iter()
            .map(|l| {
                Ok(BranchAction {
                    tau: Permutation::from_cycles(&l.tau, j.n)?,
                    rho: Permutation::from_cycles(&l.rho, j.m)?,
                    name: l.name,
                })
            })
            .collect::<Result<Vec<_>, DiffError>>()?;
        ProductMonodromy::new(j.n, j.m, labels)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub size: usize,
    /// `(x`-points over a fixed `y`, `y`-points over a fixed `x)`.
    pub bidegree: (usize, usize),
    /// Least grid point of the orbit, 1-based.
    pub anchor: (usize, usize),
}

impl ProductMonodromy {
    pub fn new(n: usize, m: usize, labels: Vec<BranchAction>) -> Result<Self, DiffError> {
        for l in &labels {
            if l.tau.degree() != n || l.rho.degree() != m {
                return Err(DiffError::Degree {
                    label: l.name.clone(),
                    n,
                    m,
                    got_n: l.tau.degree(),
                    got_m: l.rho.degree(),
                });
            }
        }
        Ok(ProductMonodromy { n, m, labels })
    }

    fn taus(&self) -> Vec<Permutation> {
        self.labels.iter().map(|l| l.tau.clone()).collect()
    }

    fn rhos(&self) -> Vec<Permutation> {
        self.labels.iter().map(|l| l.rho.clone()).collect()
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Orbits of the diagonal action, ordered by their least grid point.
pub fn component_orbits(pm: &ProductMonodromy) -> Result<Vec<Orbit>, DiffError> {
    let (n, m) = (pm.n, pm.m);
    let idx = |x: usize, y: usize| x * m + y;
    let mut parent: Vec<usize> = (0..n * m).collect();
    for l in &pm.labels {
        for x in 0..n {
            for y in 0..m {
                let a = find(&mut parent, idx(x, y));
                let b = find(&mut parent, idx(l.tau.apply(x), l.rho.apply(y)));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    // Unions keep the minimum, so each root is the least index of its class.
    let mut members: std::collections::BTreeMap<usize, Vec<(usize, usize)>> = Default::default();
    for x in 0..n {
        for y in 0..m {
            let r = find(&mut parent, idx(x, y));
            members.entry(r).or_default().push((x, y));
        }
    }
    let mut out = Vec::new();
    for (root, pts) in members {
        let mut per_y = vec![0usize; m];
        let mut per_x = vec![0usize; n];
        for &(x, y) in &pts {
            per_y[y] += 1;
            per_x[x] += 1;
        }
        let constant = |v: &[usize]| {
            let nonzero: HashSet<usize> = v.iter().copied().filter(|&c| c > 0).collect();
            (nonzero.len() == 1).then(|| *nonzero.iter().next().unwrap())
        };
        let (ax, ay) = (root / m, root % m);
        let (Some(dx), Some(dy)) = (constant(&per_y), constant(&per_x)) else {
            return Err(DiffError::FibreSizes { x: ax + 1, y: ay + 1 });
        };
        // A factor of bidegree (dx, dy) meets every fibre, so support must be full.
        if per_y.contains(&0) || per_x.contains(&0) {
            return Err(DiffError::FibreSizes { x: ax + 1, y: ay + 1 });
        }
        out.push(Orbit {
            size: pts.len(),
            bidegree: (dx, dy),
            anchor: (ax + 1, ay + 1),
        });
    }
    Ok(out)
}

fn residue_map(k: usize, f: impl Fn(i64) -> i64) -> Permutation {
    let k64 = k as i64;
    Permutation::from_images((0..k64).map(|i| f(i).rem_euclid(k64) as u32).collect())
        .expect("affine residue map is a bijection")
}

/// `T_{2n}(x) + T_{2n}(y)` on `ℤ/2n × ℤ/2n` with
/// `τ₁(i,j) = (−i, −j−1)` and `τ₂(i,j) = (−i−1, −j)`.
pub fn cheb_sum(n: usize) -> ProductMonodromy {
    let k = 2 * n;
    let labels = vec![
        BranchAction {
            name: "1".into(),
            tau: residue_map(k, |i| -i),
            rho: residue_map(k, |j| -j - 1),
        },
        BranchAction {
            name: "-1".into(),
            tau: residue_map(k, |i| -i - 1),
            rho: residue_map(k, |j| -j),
        },
    ];
    ProductMonodromy::new(k, k, labels).expect("matching degrees")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchurCount {
    pub orbits: Vec<Orbit>,
    /// Orbits other than the diagonal, the factors of `(f(x) − f(y))/(x − y)`.
    pub factor_count: usize,
}

/// `T_n(x) − T_n(y)` on `(ℤ/n)²` with `τ₁(i,j) = (−i,−j)`, `τ₂(i,j) = (−i−1,−j−1)`.
pub fn schur(n: usize) -> Result<(ProductMonodromy, SchurCount), DiffError> {
    let t1 = residue_map(n, |i| -i);
    let t2 = residue_map(n, |i| -i - 1);
    let pm = ProductMonodromy::new(
        n,
        n,
        vec![
            BranchAction {
                name: "1".into(),
                tau: t1.clone(),
                rho: t1,
            },
            BranchAction {
                name: "-1".into(),
                tau: t2.clone(),
                rho: t2,
            },
        ],
    )?;
    let orbits = component_orbits(&pm)?;
    let factor_count = orbits.len() - 1;
    Ok((
        pm,
        SchurCount {
            orbits,
            factor_count,
        },
    ))
}

/// Column-vector action of a 3×3 matrix over `𝔽₂` on the nonzero vectors,
/// vector `(v₁, v₂, v₃)` being point `v₁ + 2v₂ + 4v₃`.
fn f2_action(rows: [[u8; 3]; 3]) -> Permutation {
    let images = (1u32..=7)
        .map(|v| {
            let bits = [v & 1, (v >> 1) & 1, (v >> 2) & 1];
            let mut w = 0u32;
            for (i, row) in rows.iter().enumerate() {
                let s: u32 = row.iter().zip(bits).map(|(&a, b)| a as u32 * b).sum();
                w |= (s & 1) << i;
            }
            w
        })
        .collect::<Vec<_>>();
    Permutation::from_images_one_based(&images).expect("invertible matrix")
}

fn f2_inverse_transpose(rows: [[u8; 3]; 3]) -> [[u8; 3]; 3] {
    // Brute force over GL(3,2): find B with B·Aᵀ = I.
    for code in 0u32..512 {
        let b: [[u8; 3]; 3] =
            std::array::from_fn(|i| std::array::from_fn(|j| ((code >> (3 * i + j)) & 1) as u8));
        let ok = (0..3).all(|i| {
            (0..3).all(|j| {
                let s: u8 = (0..3).map(|k| b[i][k] * rows[j][k]).sum();
                (s & 1) == u8::from(i == j)
            })
        });
        if ok {
            return b;
        }
    }
    panic!("matrix is singular over F2");
}

pub const FANO_MATRICES: [[[u8; 3]; 3]; 3] = [
    [[1, 1, 0], [0, 1, 0], [0, 0, 1]],
    [[1, 0, 0], [1, 1, 0], [0, 0, 1]],
    [[1, 0, 0], [0, 0, 1], [0, 1, 0]],
];

/// The three matrices acting on the points of the Fano plane, and by their
/// inverse transposes on the lines; line `w` is `{v : w·v = 0}`.
pub fn fano() -> ProductMonodromy {
    let names = ["0", "1", "λ"];
    let labels = FANO_MATRICES
        .iter()
        .zip(names)
        .map(|(&a, name)| BranchAction {
            name: name.to_string(),
            tau: f2_action(a),
            rho: f2_action(f2_inverse_transpose(a)),
        })
        .collect();
    ProductMonodromy::new(7, 7, labels).expect("degree 7")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BranchesAtInfinity {
    pub d: u64,
    /// `d = 1` suffices for irreducibility; orbit counts remain authoritative.
    pub irreducible_advisory: bool,
}

pub fn gcd_branches(n: u64, m: u64) -> BranchesAtInfinity {
    let d = num_integer::gcd(n, m);
    BranchesAtInfinity {
        d,
        irreducible_advisory: d == 1,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProjectionCheck {
    pub left_group_order: usize,
    pub right_group_order: usize,
    pub diagonal_group_order: usize,
    pub left_surjective: bool,
    pub right_surjective: bool,
    pub left_transitive: bool,
    pub right_transitive: bool,
}

/// Closes the diagonal pairs on `n + m` points and compares each projection
/// with the group generated by that side alone.
pub fn projection_check(pm: &ProductMonodromy, cap: usize) -> Result<ProjectionCheck, DiffError> {
    let (n, m) = (pm.n, pm.m);
    let joint: Vec<Permutation> = pm
        .labels
        .iter()
        .map(|l| {
            let mut images: Vec<u32> = l.tau.images().to_vec();
            images.extend(l.rho.images().iter().map(|&j| j + n as u32));
            Permutation::from_images(images).expect("block permutation")
        })
        .collect();
    let diagonal = closure(&joint, n + m, cap)?;
    let left = closure(&pm.taus(), n, cap)?;
    let right = closure(&pm.rhos(), m, cap)?;
    let project = |range: std::ops::Range<usize>, offset: u32| -> HashSet<Permutation> {
        diagonal
            .iter()
            .map(|g| {
                Permutation::from_images(g.images()[range.clone()].iter().map(|&i| i - offset).collect())
                    .expect("block restriction")
            })
            .collect()
    };
    let pl = project(0..n, 0);
    let pr = project(n..n + m, n as u32);
    Ok(ProjectionCheck {
        left_group_order: left.len(),
        right_group_order: right.len(),
        diagonal_group_order: diagonal.len(),
        left_surjective: pl == left,
        right_surjective: pr == right,
        left_transitive: is_transitive(&pm.taus(), n),
        right_transitive: is_transitive(&pm.rhos(), m),
    })
}
