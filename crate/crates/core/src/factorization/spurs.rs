use nalgebra::DMatrix;

use super::{FactorizationKind, FactorizationResult, SpurPattern};
use crate::error::{Error, Result};
use crate::matrix::{MMatrix, Tolerances};
use crate::partitions::{finest_encompassing, OrderedPartition};
use crate::structure::{singular_structure, SingularStructure};

/// Gaussian elimination pivoting on every column not flagged in `skip`, in
/// ascending order, with row `i` as the pivot row for column `i`.
///
/// Returns `(L, U)` with `L` unit lower triangular holding the multipliers.
/// Skipped columns keep their subdiagonal entries and their rows are never
/// used as pivot rows.
pub(crate) fn eliminate_skipping(
    a: &DMatrix<f64>,
    skip: &[bool],
    thr: f64,
) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let n = a.nrows();
    let mut u = a.clone();
    let mut l = DMatrix::identity(n, n);
    for i in 0..n {
        if skip[i] {
            continue;
        }
        let pivot = u[(i, i)];
        if pivot.abs() <= thr {
            return Err(Error::ZeroPivot { index: i });
        }
        for j in i + 1..n {
            let x = u[(j, i)];
            if x == 0.0 {
                continue;
            }
            let m = x / pivot;
            l[(j, i)] = m;
            // Row i may carry spurs left of the diagonal, so sweep every column.
            for c in 0..n {
                if c != i {
                    let d = u[(i, c)];
                    if d != 0.0 {
                        u[(j, c)] -= m * d;
                    }
                }
            }
            u[(j, i)] = 0.0;
        }
    }
    Ok((l, u))
}

fn mu_mask(s: &SingularStructure) -> Vec<bool> {
    let mut skip = vec![false; s.n()];
    for &m in &s.mu {
        skip[m] = true;
    }
    skip
}

/// LU with `L` a unit lower triangular nonsingular M-matrix and `U` an
/// M-matrix that is upper triangular except in the columns `mu_i`, where
/// subdiagonal nonzeros may sit at positions of the spur pattern
/// `{ (j, mu_i) : j > mu_i, j has access to mu_i }`. `u_jj = 0` exactly at
/// the `mu_i`.
///
/// Eliminates directly; the `mu_i` rows are never pivot rows, so the
/// elementary operations are those of the regularized matrix with positive
/// `(mu_i, mu_i)` entries and every pivot taken is positive.
pub fn factor_lu_spurs(a: &MMatrix, tol: &Tolerances) -> Result<FactorizationResult> {
    let s = singular_structure(a, tol)?;
    let (l, u) = eliminate_skipping(a.entries(), &mu_mask(&s), a.zero_threshold())?;
    let t_sets: Vec<Vec<usize>> = s.t.iter().map(|t| t.to_vec()).collect();
    Ok(FactorizationResult {
        kind: FactorizationKind::SpurLU,
        l: MMatrix::with_zero_tol(l, a.zero_tol())?,
        u: MMatrix::with_zero_tol(u, a.zero_tol())?,
        b: None,
        chi: Some(SpurPattern {
            chi: s.spur_pattern(),
        }),
        split: None,
        psi: OrderedPartition::singletons(a.n()),
        upsilon: finest_encompassing(&t_sets, a.n())?,
    })
}

/// Admissible support of the middle LBU factor: non-`mu` diagonal positions,
/// `(j, mu_i)` for `j > mu_i` with access to `mu_i`, and `(mu_i, j)` for
/// `j > mu_i` accessed from `mu_i`.
pub fn lbu_pattern(s: &SingularStructure) -> SpurPattern {
    let mut chi = s.spur_pattern();
    for j in (0..s.n()).filter(|&j| !s.is_mu(j)) {
        chi.insert((j, j));
    }
    for &m in &s.mu {
        for j in m + 1..s.n() {
            if s.closure.reaches(m, j) {
                chi.insert((m, j));
            }
        }
    }
    SpurPattern { chi }
}

/// `A = L B U`: spur LU `A = L V`, then spur LU of `V^T = X Y` skipping the
/// same columns, `B = Y^T`, `U = X^T`.
pub fn factor_lbu(a: &MMatrix, tol: &Tolerances) -> Result<FactorizationResult> {
    let s = singular_structure(a, tol)?;
    let skip = mu_mask(&s);
    let thr = a.zero_threshold();
    let (l, v) = eliminate_skipping(a.entries(), &skip, thr)?;
    let (x, y) = eliminate_skipping(&v.transpose(), &skip, thr)?;
    let n = a.n();
    Ok(FactorizationResult {
        kind: FactorizationKind::LBU,
        l: MMatrix::with_zero_tol(l, a.zero_tol())?,
        u: MMatrix::with_zero_tol(x.transpose(), a.zero_tol())?,
        b: Some(MMatrix::with_zero_tol(y.transpose(), a.zero_tol())?),
        chi: Some(lbu_pattern(&s)),
        split: None,
        psi: OrderedPartition::singletons(n),
        upsilon: OrderedPartition::singletons(n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn spur_lu_of_a43() {
        let r = factor_lu_spurs(&fixtures::a_43(), &tol()).unwrap();
        let (l, u) = fixtures::a_43_factors();
        assert_eq!(r.l.entries(), l.entries());
        assert_eq!(r.u.entries(), u.entries());
        let chi: Vec<_> = r.chi.unwrap().chi.into_iter().map(|(j, k)| (j + 1, k + 1)).collect();
        assert_eq!(chi, vec![(3, 2), (4, 2), (5, 2), (5, 4), (7, 6), (8, 6)]);
        assert_eq!(r.u.get(4, 1), 0.0);
    }

    #[test]
    fn nonsingular_gives_plain_lu() {
        let a = MMatrix::from_rows(&[[2.0, -1.0, 0.0], [-1.0, 2.0, -1.0], [0.0, -1.0, 2.0]]);
        let r = factor_lu_spurs(&a, &tol()).unwrap();
        for i in 0..3 {
            assert!(r.u.get(i, i) > 0.0);
            for j in 0..i {
                assert_eq!(r.u.get(i, j), 0.0);
            }
        }
        assert!(r.chi.as_ref().unwrap().is_empty());
        let prod = r.product();
        assert!((prod.entries() - a.entries()).amax() < 1e-15);
    }

    #[test]
    fn lbu_of_eg3() {
        let r = factor_lbu(&fixtures::a_eg3(), &tol()).unwrap();
        let (l, b, u) = fixtures::a_eg3_lbu();
        assert_eq!(r.l.entries(), l.entries());
        assert_eq!(r.b.as_ref().unwrap().entries(), b.entries());
        assert_eq!(r.u.entries(), u.entries());
        assert_eq!(r.product().entries(), fixtures::a_eg3().entries());

        let mut off: Vec<_> = r
            .chi
            .unwrap()
            .chi
            .into_iter()
            .filter(|(j, k)| j != k)
            .map(|(j, k)| (j + 1, k + 1))
            .collect();
        off.sort();
        // Vertex 4 has no incoming edges, so (2, 4) cannot be admissible.
        let mut expected = vec![
            (2, 3),
            (2, 5),
            (2, 6),
            (7, 2),
            (8, 2),
            (5, 6),
            (7, 5),
            (8, 5),
            (7, 6),
            (8, 6),
            (7, 8),
        ];
        expected.sort();
        assert_eq!(off, expected);
    }

    #[test]
    fn lbu_of_nonsingular_is_diagonal_middle() {
        let a = MMatrix::from_rows(&[[2.0, -1.0, 0.0], [-1.0, 2.0, -1.0], [0.0, -1.0, 2.0]]);
        let r = factor_lbu(&a, &tol()).unwrap();
        let b = r.b.unwrap();
        for i in 0..3 {
            assert!(b.get(i, i) > 0.0);
            for j in 0..3 {
                if i != j {
                    assert!(b.get(i, j).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn lbu_of_zero_scalar() {
        let r = factor_lbu(&MMatrix::zeros(1), &tol()).unwrap();
        assert_eq!(r.l, MMatrix::identity(1));
        assert_eq!(r.u, MMatrix::identity(1));
        assert_eq!(r.b.unwrap(), MMatrix::zeros(1));
    }

    #[test]
    fn zero_pivot_outside_mu_is_reported() {
        let a = DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 0.0, 1.0]);
        assert_eq!(
            eliminate_skipping(&a, &[false, false], 1e-9),
            Err(Error::ZeroPivot { index: 0 })
        );
    }
}
