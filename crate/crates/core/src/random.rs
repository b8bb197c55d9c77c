//! Random generators for property tests, the acceptance sweep and benches.
//!
//! `random_m_matrix` builds `A = alpha*I - P` where every strongly connected
//! block of `P` is row-stochastic scaled by 1 (critical) or by a factor below
//! one, and cross-block edges follow a random topological order, so
//! `rho(P) = 1` whenever at least one block is critical. `alpha` is 1 for a
//! singular matrix and 1.1 for a nonsingular one.

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::digraph::DiGraph;
use crate::matrix::MMatrix;

#[derive(Debug, Clone, Copy)]
pub struct GenParams {
    pub max_class: usize,
    pub intra_density: f64,
    pub cross_density: f64,
    pub critical_prob: f64,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            max_class: 3,
            intra_density: 0.3,
            cross_density: 0.25,
            critical_prob: 0.5,
        }
    }
}

fn weight<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    *[0.25, 0.5, 1.0, 2.0].choose(rng).unwrap()
}

/// `singular` selects `alpha = rho(P) = 1`; otherwise `alpha = 1.1`.
pub fn random_m_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize, singular: bool) -> MMatrix {
    random_m_matrix_with(rng, n, singular, &GenParams::default())
}

pub fn random_m_matrix_with<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    singular: bool,
    p: &GenParams,
) -> MMatrix {
    assert!(n >= 1);
    let mut verts: Vec<usize> = (0..n).collect();
    verts.shuffle(rng);

    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut rest = &verts[..];
    while !rest.is_empty() {
        let size = if rng.gen_bool(0.5) {
            1
        } else {
            rng.gen_range(1..=p.max_class.max(1)).min(rest.len())
        };
        classes.push(rest[..size].to_vec());
        rest = &rest[size..];
    }

    let mut critical: Vec<bool> = classes.iter().map(|_| rng.gen_bool(p.critical_prob)).collect();
    if !critical.iter().any(|&c| c) {
        let k = rng.gen_range(0..classes.len());
        critical[k] = true;
    }

    let mut pm = DMatrix::<f64>::zeros(n, n);
    for (class, &crit) in classes.iter().zip(&critical) {
        let scale = if crit {
            1.0
        } else {
            *[0.0, 0.5, 0.75].choose(rng).unwrap()
        };
        let s = class.len();
        if s == 1 {
            pm[(class[0], class[0])] = scale;
            continue;
        }
        let mut block = DMatrix::<f64>::zeros(s, s);
        for a in 0..s {
            block[(a, (a + 1) % s)] = weight(rng);
            for b in 0..s {
                if block[(a, b)] == 0.0 && rng.gen_bool(p.intra_density) {
                    block[(a, b)] = weight(rng);
                }
            }
        }
        // A zero scale would disconnect the class, so use a small one instead.
        let scale = if scale == 0.0 { 0.25 } else { scale };
        for a in 0..s {
            let sum: f64 = block.row(a).sum();
            for b in 0..s {
                pm[(class[a], class[b])] = scale * block[(a, b)] / sum;
            }
        }
    }

    for x in 0..classes.len() {
        for y in x + 1..classes.len() {
            if rng.gen_bool(p.cross_density) {
                let i = *classes[x].choose(rng).unwrap();
                let j = *classes[y].choose(rng).unwrap();
                pm[(i, j)] = weight(rng);
            }
        }
    }

    let alpha = if singular { 1.0 } else { 1.1 };
    MMatrix::new(DMatrix::identity(n, n) * alpha - pm).expect("square by construction")
}

/// Mixed corpus: sizes uniform in `1..=max_n`, singular with probability 3/4.
pub fn random_corpus<R: Rng + ?Sized>(rng: &mut R, count: usize, max_n: usize) -> Vec<MMatrix> {
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_n);
            let singular = rng.gen_bool(0.75);
            random_m_matrix(rng, n, singular)
        })
        .collect()
}

pub fn random_digraph<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> DiGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if rng.gen_bool(density) {
                edges.push((i, j));
            }
        }
    }
    DiGraph::new(n, edges).expect("indices in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Tolerances;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_matrices_are_m_matrices_of_the_requested_kind() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let tol = Tolerances::default();
        for _ in 0..200 {
            let n = rng.gen_range(1..=10);
            let singular = rng.gen_bool(0.5);
            let a = random_m_matrix(&mut rng, n, singular);
            assert!(a.is_z_matrix());
            assert!(a.is_m_matrix(&tol));
            // alpha(A) - rho(alpha(A) I - A) is the smallest real eigenvalue of A.
            let gap = a.alpha() - a.splitting_radius();
            let want = if singular { 0.0 } else { 0.1 };
            assert!((gap - want).abs() < 1e-9, "gap = {gap}");
            let smin = a.entries().clone().svd(false, false).singular_values.min();
            if singular {
                assert!(smin < 1e-9);
            } else {
                assert!(smin > 1e-6);
            }
        }
    }
}
