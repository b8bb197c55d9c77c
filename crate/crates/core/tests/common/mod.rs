//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the graph, partition or structure code under test.

#![allow(dead_code, clippy::needless_range_loop)]

use mlu_core::MMatrix;
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Off-diagonal nonzero pattern, compared exactly against zero.
pub fn edges_of(a: &MMatrix) -> Vec<(usize, usize)> {
    let n = a.n();
    let mut e = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && a.get(i, j) != 0.0 {
                e.push((i, j));
            }
        }
    }
    e
}

/// Reflexive-transitive closure by Floyd-Warshall.
pub fn floyd_warshall(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut r = vec![vec![false; n]; n];
    for (i, row) in r.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(i, j) in edges {
        r[i][j] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                for j in 0..n {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    r
}

/// Mutual-reachability classes, each ascending, ordered by smallest vertex.
pub fn classes_by_mutual_reach(reach: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let n = reach.len();
    let mut done = vec![false; n];
    let mut out = Vec::new();
    for v in 0..n {
        if done[v] {
            continue;
        }
        let c: Vec<usize> = (0..n).filter(|&w| reach[v][w] && reach[w][v]).collect();
        for &w in &c {
            done[w] = true;
        }
        out.push(c);
    }
    out
}

/// Singular iff the determinant vanishes relative to the entry scale.
pub fn is_singular_by_det(m: &DMatrix<f64>) -> bool {
    let k = m.nrows() as i32;
    let scale = m.iter().fold(1.0f64, |s, x| s.max(x.abs()));
    m.clone().determinant().abs() <= 1e-9 * scale.powi(k)
}

/// Singular classes ordered by largest vertex, with T and F as explicit sets
/// straight from the defining formulas.
pub struct StructureOracle {
    pub classes: Vec<Vec<usize>>,
    pub mu: Vec<usize>,
    pub t: Vec<Vec<usize>>,
    pub f: Vec<Vec<usize>>,
}

pub fn structure_oracle(a: &MMatrix) -> StructureOracle {
    let n = a.n();
    let reach = floyd_warshall(n, &edges_of(a));
    let mut classes: Vec<Vec<usize>> = classes_by_mutual_reach(&reach)
        .into_iter()
        .filter(|c| is_singular_by_det(&a.principal(c)))
        .collect();
    classes.sort_by_key(|c| *c.iter().max().unwrap());
    let mu: Vec<usize> = classes.iter().map(|c| *c.iter().max().unwrap()).collect();
    let set = |m: usize, rel: &dyn Fn(usize) -> bool| -> Vec<usize> {
        (m..n).filter(|&l| (l..n).any(rel)).collect()
    };
    let t = classes
        .iter()
        .zip(&mu)
        .map(|(c, &m)| set(m, &|j| c.iter().any(|&s| reach[j][s])))
        .collect();
    let f = classes
        .iter()
        .zip(&mu)
        .map(|(c, &m)| set(m, &|j| c.iter().any(|&s| reach[s][j])))
        .collect();
    StructureOracle { classes, mu, t, f }
}

/// Whether `x` is block lower triangular for the partition given by `cuts`
/// (cut after position k means k and k+1 are in different blocks).
pub fn block_lower_by_cuts(x: &MMatrix, cuts: &[bool]) -> bool {
    let n = x.n();
    let block: Vec<usize> = (0..n)
        .scan(0, |b, k| {
            let cur = *b;
            if k + 1 < n && cuts[k] {
                *b += 1;
            }
            Some(cur)
        })
        .collect();
    (0..n).all(|i| (0..n).all(|j| block[j] <= block[i] || x.get(i, j) == 0.0))
}

/// Every valid cut set for block lower triangularity, by exhaustive search.
pub fn all_lower_cut_sets(x: &MMatrix) -> Vec<Vec<bool>> {
    let n = x.n();
    let k = n.saturating_sub(1);
    (0u32..1 << k)
        .map(|mask| (0..k).map(|b| mask & (1 << b) != 0).collect::<Vec<bool>>())
        .filter(|cuts| block_lower_by_cuts(x, cuts))
        .collect()
}

/// A random nonnegative matrix with exact dyadic entries and the given density.
pub fn random_nonneg(rng: &mut impl Rng, n: usize, density: f64) -> DMatrix<f64> {
    DMatrix::from_fn(n, n, |_, _| {
        if rng.gen_bool(density) {
            [0.25, 0.5, 1.0, 2.0][rng.gen_range(0..4)]
        } else {
            0.0
        }
    })
}

/// `P = r D S D^-1` with `S` row-stochastic, hence `rho(P) = r` exactly in
/// exact arithmetic. Rows of `S` with no entries get a unit diagonal.
pub fn nonneg_with_radius(rng: &mut impl Rng, n: usize, r: f64) -> DMatrix<f64> {
    let mut s = random_nonneg(rng, n, 0.4);
    for i in 0..n {
        let sum: f64 = s.row(i).sum();
        if sum == 0.0 {
            s[(i, i)] = 1.0;
        } else {
            for j in 0..n {
                s[(i, j)] /= sum;
            }
        }
    }
    let d: Vec<f64> = (0..n).map(|_| [0.5, 1.0, 2.0, 4.0][rng.gen_range(0..4)]).collect();
    DMatrix::from_fn(n, n, |i, j| r * d[i] * s[(i, j)] / d[j])
}
