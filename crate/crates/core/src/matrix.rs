//! Dense square matrices with the Z/M-matrix predicates and the elimination
//! step shared by the factorization algorithms.

use nalgebra::{DMatrix, Schur};

use crate::digraph::{classes_of, DiGraph};
use crate::error::{Error, Result};

/// Default relative threshold below which an entry counts as structurally zero.
pub const DEFAULT_ZERO_TOL: f64 = 1e-9;

/// Numerical tolerances used across the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Slack factor for the spectral radius test: `alpha >= rho(P) - m_tol * (1 + alpha)`.
    pub m_tol: f64,
    /// Relative threshold on the smallest singular value of a class block.
    pub sing_tol: f64,
    /// Relative bound on `||LU - A||_inf / ||A||_inf`.
    pub p_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            m_tol: 1e-8,
            sing_tol: 1e-8,
            p_tol: 1e-10,
        }
    }
}

/// A square real matrix together with its structural-zero threshold.
///
/// An entry `e` is structurally zero iff `|e| <= zero_tol * max(1, max |a_ij|)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MMatrix {
    entries: DMatrix<f64>,
    zero_tol: f64,
}

impl MMatrix {
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        Self::with_zero_tol(entries, DEFAULT_ZERO_TOL)
    }

    pub fn with_zero_tol(entries: DMatrix<f64>, zero_tol: f64) -> Result<Self> {
        if entries.nrows() != entries.ncols() || entries.nrows() == 0 {
            return Err(Error::NotSquare {
                rows: entries.nrows(),
                cols: entries.ncols(),
            });
        }
        if zero_tol.is_nan() || zero_tol < 0.0 {
            return Err(Error::NegativeTolerance(zero_tol));
        }
        Ok(MMatrix { entries, zero_tol })
    }

    /// Builds a matrix from row slices. Panics on ragged or empty input;
    /// intended for literals.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Self {
        let n = rows.len();
        assert!(n > 0, "empty matrix literal");
        for r in rows {
            assert_eq!(r.as_ref().len(), n, "matrix literal must be square");
        }
        let m = DMatrix::from_fn(n, n, |i, j| rows[i].as_ref()[j]);
        MMatrix {
            entries: m,
            zero_tol: DEFAULT_ZERO_TOL,
        }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n > 0);
        MMatrix {
            entries: DMatrix::identity(n, n),
            zero_tol: DEFAULT_ZERO_TOL,
        }
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n > 0);
        MMatrix {
            entries: DMatrix::zeros(n, n),
            zero_tol: DEFAULT_ZERO_TOL,
        }
    }

    /// Same entries, different structural-zero threshold.
    pub fn retol(&self, zero_tol: f64) -> Result<Self> {
        Self::with_zero_tol(self.entries.clone(), zero_tol)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.entries.nrows()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn into_entries(self) -> DMatrix<f64> {
        self.entries
    }

    pub fn zero_tol(&self) -> f64 {
        self.zero_tol
    }

    /// Absolute threshold: `zero_tol * max(1, max |a_ij|)`.
    pub fn zero_threshold(&self) -> f64 {
        self.zero_tol * self.entries.amax().max(1.0)
    }

    #[inline]
    pub fn is_zero_at(&self, i: usize, j: usize) -> bool {
        self.entries[(i, j)].abs() <= self.zero_threshold()
    }

    /// Boolean nonzero pattern, row-major.
    pub fn pattern(&self) -> Vec<Vec<bool>> {
        let thr = self.zero_threshold();
        let n = self.n();
        (0..n)
            .map(|i| (0..n).map(|j| self.entries[(i, j)].abs() > thr).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        MMatrix {
            entries: self.entries.transpose(),
            zero_tol: self.zero_tol,
        }
    }

    /// Matrix product; keeps the left operand's threshold.
    pub fn mul(&self, rhs: &MMatrix) -> Result<MMatrix> {
        if self.n() != rhs.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: rhs.n(),
            });
        }
        Ok(MMatrix {
            entries: &self.entries * &rhs.entries,
            zero_tol: self.zero_tol,
        })
    }

    pub fn inf_norm(&self) -> f64 {
        inf_norm(&self.entries)
    }

    /// Principal submatrix `A_JJ` (indices in the given order).
    pub fn principal(&self, idx: &[usize]) -> DMatrix<f64> {
        self.submatrix(idx, idx)
    }

    /// Submatrix `A_JK`.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> DMatrix<f64> {
        DMatrix::from_fn(rows.len(), cols.len(), |a, b| {
            self.entries[(rows[a], cols[b])]
        })
    }

    /// Every off-diagonal entry is at most the structural threshold.
    pub fn is_z_matrix(&self) -> bool {
        let thr = self.zero_threshold();
        let n = self.n();
        (0..n).all(|i| (0..n).all(|j| i == j || self.entries[(i, j)] <= thr))
    }

    /// `alpha = max(0, max a_ii)` of the splitting `A = alpha I - P`.
    pub fn alpha(&self) -> f64 {
        self.entries
            .diagonal()
            .iter()
            .copied()
            .fold(0.0_f64, f64::max)
    }

    /// Spectral radius of `P = alpha I - A`.
    ///
    /// Evaluated class by class: `rho(P)` is the maximum of `rho(P_JJ)` over the
    /// strongly connected classes `J`, and each irreducible block has a simple
    /// Perron root, which keeps the eigenvalue computation well conditioned.
    pub fn splitting_radius(&self) -> f64 {
        let alpha = self.alpha();
        let graph = DiGraph::of_matrix(self);
        let classes = classes_of(&graph);
        classes
            .classes
            .iter()
            .map(|class| {
                let mut p = self.principal(class);
                p.neg_mut();
                for k in 0..class.len() {
                    p[(k, k)] += alpha;
                }
                spectral_radius(&p)
            })
            .fold(0.0, f64::max)
    }

    pub fn is_m_matrix(&self, tol: &Tolerances) -> bool {
        if !self.is_z_matrix() {
            return false;
        }
        let alpha = self.alpha();
        alpha >= self.splitting_radius() - tol.m_tol * (1.0 + alpha)
    }

    /// One step of Gaussian elimination on `pivot`: returns
    /// `A_NN - A_Np A_pN / a_pp` with `N` the remaining indices in ascending order.
    pub fn schur_step(&self, pivot: usize) -> Result<MMatrix> {
        let n = self.n();
        if pivot >= n {
            return Err(Error::IndexOutOfRange { index: pivot, n });
        }
        if self.is_zero_at(pivot, pivot) {
            return Err(Error::ZeroPivot { index: pivot });
        }
        if n == 1 {
            // Nothing left after eliminating the only index.
            return Err(Error::NotSquare { rows: 0, cols: 0 });
        }
        let rest: Vec<usize> = (0..n).filter(|&k| k != pivot).collect();
        Ok(MMatrix {
            entries: schur_complement(&self.entries, pivot, &rest),
            zero_tol: self.zero_tol,
        })
    }
}

pub(crate) fn schur_complement(a: &DMatrix<f64>, pivot: usize, rest: &[usize]) -> DMatrix<f64> {
    let piv = a[(pivot, pivot)];
    DMatrix::from_fn(rest.len(), rest.len(), |r, c| {
        let (i, j) = (rest[r], rest[c]);
        a[(i, j)] - a[(i, pivot)] * a[(pivot, j)] / piv
    })
}

pub(crate) fn inf_norm(m: &DMatrix<f64>) -> f64 {
    m.row_iter()
        .map(|r| r.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Largest eigenvalue modulus of a (small, dense) matrix.
pub(crate) fn spectral_radius(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    if n == 0 {
        return 0.0;
    }
    if n == 1 {
        return m[(0, 0)].abs();
    }
    match Schur::try_new(m.clone(), f64::EPSILON, 10_000) {
        Some(schur) => schur
            .complex_eigenvalues()
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max),
        None => power_radius(m),
    }
}

/// Fallback for nonnegative irreducible blocks: power iteration on `M + I`,
/// which is primitive, so the iteration converges to `rho(M) + 1`.
fn power_radius(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    let shifted = m + DMatrix::<f64>::identity(n, n);
    let mut x = nalgebra::DVector::from_element(n, 1.0 / n as f64);
    let mut lambda = 0.0;
    for _ in 0..100_000 {
        let y = &shifted * &x;
        let norm = y.amax();
        if norm == 0.0 {
            return 0.0;
        }
        let next = y / norm;
        let delta = (&next - &x).amax();
        x = next;
        lambda = norm;
        if delta < 1e-15 {
            break;
        }
    }
    (lambda - 1.0).max(0.0)
}

/// Smallest singular value.
pub(crate) fn sigma_min(m: &DMatrix<f64>) -> f64 {
    if m.nrows() == 0 {
        return f64::INFINITY;
    }
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// Singularity test used for class blocks and diagonal blocks of factors.
pub(crate) fn is_singular_block(m: &DMatrix<f64>, tol: &Tolerances) -> bool {
    sigma_min(m) <= tol.sing_tol * inf_norm(m).max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn z_matrix_examples() {
        assert!(fixtures::a_eg().is_z_matrix());
        assert!(MMatrix::identity(4).is_z_matrix());
        assert!(!MMatrix::from_rows(&[[1.0, 0.5], [0.0, 1.0]]).is_z_matrix());
    }

    #[test]
    fn m_matrix_examples() {
        let tol = Tolerances::default();
        assert!(fixtures::a_eg().is_m_matrix(&tol));
        assert!(MMatrix::from_rows(&[[0.0, -1.0], [0.0, 0.0]]).is_m_matrix(&tol));
        // alpha = 0 and rho(P) = 2 for P = [[0,2],[2,0]].
        assert!(!MMatrix::from_rows(&[[0.0, -2.0], [-2.0, 0.0]]).is_m_matrix(&tol));
        assert!(!MMatrix::from_rows(&[[1.0, 0.5], [0.0, 1.0]]).is_m_matrix(&tol));
    }

    #[test]
    fn schur_step_examples() {
        let b = fixtures::a_eg2().schur_step(0).unwrap();
        // Row for original index 2, columns 2..7.
        let row: Vec<f64> = (0..6).map(|j| b.get(0, j)).collect();
        assert_eq!(row, vec![0.0, 0.0, 0.0, -3.0, 0.0, 0.0]);

        let b = MMatrix::identity(3).schur_step(0).unwrap();
        assert_eq!(b, MMatrix::identity(2));

        let b = MMatrix::from_rows(&[[2.0, -1.0], [-1.0, 2.0]]).schur_step(0).unwrap();
        assert_eq!(b.get(0, 0), 1.5);
    }

    #[test]
    fn schur_step_zero_pivot() {
        let err = fixtures::a_eg().schur_step(0).unwrap_err();
        assert_eq!(err, Error::ZeroPivot { index: 0 });
    }

    #[test]
    fn structural_threshold_scales_with_entries() {
        let a = MMatrix::from_rows(&[[1e6, -1e-4], [0.0, 1.0]]);
        assert!(a.is_zero_at(0, 1));
        let b = MMatrix::from_rows(&[[1.0, -1e-4], [0.0, 1.0]]);
        assert!(!b.is_zero_at(0, 1));
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(MMatrix::new(DMatrix::zeros(2, 3)).is_err());
        assert!(MMatrix::new(DMatrix::zeros(0, 0)).is_err());
        assert!(MMatrix::with_zero_tol(DMatrix::zeros(2, 2), -1.0).is_err());
    }

    #[test]
    fn power_fallback_matches_schur() {
        let m = DMatrix::from_row_slice(3, 3, &[0.0, 1.0, 0.0, 0.0, 0.0, 2.0, 0.5, 0.0, 0.0]);
        let exact = 1.0_f64; // product of cycle weights is 1
        assert!((power_radius(&m) - exact).abs() < 1e-9);
        assert!((spectral_radius(&m) - exact).abs() < 1e-12);
    }
}
