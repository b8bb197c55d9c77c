//! Worked example matrices used throughout the tests and documentation.
//!
//! Names follow the role each matrix plays in the test suite. Where a factor
//! is listed, it is the expected output of the corresponding algorithm.

use crate::matrix::MMatrix;

/// 3x3 M-matrix with no LU factorization into M-matrices having a
/// nonsingular triangular factor, but one with both factors singular.
pub fn a_eg() -> MMatrix {
    MMatrix::from_rows(&[[0.0, -1.0, 0.0], [0.0, 0.0, 0.0], [0.0, -1.0, 0.0]])
}

/// Hand-built factors of [`a_eg`]: both triangular and both singular.
pub fn a_eg_factors() -> (MMatrix, MMatrix) {
    let l = MMatrix::from_rows(&[[1.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, -1.0, 0.0]]);
    let u = MMatrix::from_rows(&[[0.0, -1.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 0.0]]);
    (l, u)
}

/// Block LU of [`a_eg`] with the first singular class in `L`: a proper
/// refinement of the guaranteed block structure.
pub fn a_eg_refined_factors() -> (MMatrix, MMatrix) {
    let l = MMatrix::from_rows(&[[0.0, -1.0, 0.0], [0.0, 0.0, 0.0], [0.0, -1.0, 1.0]]);
    let u = MMatrix::from_rows(&[[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 0.0]]);
    (l, u)
}

/// 2x2 matrix whose two singular classes cannot be split as
/// (first in `L`, second in `U`).
pub fn a_2x2() -> MMatrix {
    MMatrix::from_rows(&[[0.0, -1.0], [0.0, 0.0]])
}

/// 4x4 matrix illustrating singular classes, `T_i` and `F_i`.
pub fn a_ex23() -> MMatrix {
    MMatrix::from_rows(&[
        [0.0, -1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, -1.0],
        [0.0, -1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ])
}

/// 8x8 zero/nonzero pattern (nonzeros as 1.0) illustrating the two
/// self-partitions.
pub fn pattern_x() -> MMatrix {
    let stars: &[(usize, usize)] = &[
        (1, 1),
        (1, 2),
        (1, 3),
        (2, 2),
        (3, 3),
        (4, 4),
        (4, 7),
        (5, 6),
        (7, 5),
        (7, 7),
        (8, 8),
    ];
    let mut rows = vec![vec![0.0; 8]; 8];
    for &(i, j) in stars {
        rows[i - 1][j - 1] = 1.0;
    }
    MMatrix::from_rows(&rows)
}

/// 7x7 matrix with singular classes {1,2}, {3,4}, {6} (1-based).
pub fn a_eg2() -> MMatrix {
    MMatrix::from_rows(&[
        [1.0, -1.0, 0.0, 0.0, -1.0, 0.0, 0.0],
        [-1.0, 1.0, 0.0, 0.0, -2.0, 0.0, 0.0],
        [0.0, 0.0, 2.0, -2.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, -2.0, 2.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, -1.0, -1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, -1.0, 1.0],
    ])
}

/// Block LU of [`a_eg2`] for the split J = {2,3}, K = {1}.
pub fn a_eg2_factors() -> (MMatrix, MMatrix) {
    let l = MMatrix::from_rows(&[
        [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [-1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 2.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, -2.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, -1.0, -2.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, -1.0, 1.0],
    ]);
    let u = MMatrix::from_rows(&[
        [1.0, -1.0, 0.0, 0.0, -1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, -3.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, -1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0],
    ]);
    (l, u)
}

/// 8x8 matrix with five singular classes {2}, {3,5}, {6}, {7}, {8} (1-based).
pub fn a_eg3() -> MMatrix {
    MMatrix::from_rows(&[
        [1.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0, -1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, -1.0, 0.0, 1.0, -1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0],
        [-1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    ])
}

/// Block LU of [`a_eg3`] for the split J = {1,2,3}, K = {4,5}.
pub fn a_eg3_factors() -> (MMatrix, MMatrix) {
    let l = MMatrix::from_rows(&[
        [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0, -1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, -1.0, 0.0, 1.0, -1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0],
        [-1.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0],
    ]);
    let u = MMatrix::from_rows(&[
        [1.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    ]);
    (l, u)
}

/// Symmetric permutation of [`a_eg3`] (order 1,3,4,6,5,2,8,7) and its
/// triangular LU factors.
pub fn a_eg3_permuted() -> (MMatrix, MMatrix, MMatrix) {
    let pap = MMatrix::from_rows(&[
        [1.0, 0.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, -1.0, 0.0, -1.0, 1.0, 0.0, 0.0, 0.0],
        [0.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0, 0.0],
    ]);
    let l = MMatrix::from_rows(&[
        [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, -1.0, 0.0, -1.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, -1.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0, 0.0],
    ]);
    let u = MMatrix::from_rows(&[
        [1.0, 0.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0],
    ]);
    (pap, l, u)
}

/// 8x8 matrix for the spur-pattern LU.
pub fn a_43() -> MMatrix {
    MMatrix::from_rows(&[
        [1.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [-1.0, 1.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0],
        [-1.0, 0.0, 2.0, -2.0, 0.0, 0.0, -1.0, 0.0],
        [0.0, -1.0, -1.0, 1.0, 0.0, 0.0, -2.0, -1.0],
        [0.0, 0.0, 0.0, -1.0, 1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, -1.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, -1.0, -1.0, 1.0],
    ])
}

/// Spur LU factors of [`a_43`].
pub fn a_43_factors() -> (MMatrix, MMatrix) {
    let mut l = vec![vec![0.0; 8]; 8];
    for (i, row) in l.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    l[1][0] = -1.0;
    l[2][0] = -1.0;
    l[3][2] = -0.5;
    l[7][6] = -1.0;
    let u = MMatrix::from_rows(&[
        [1.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0],
        [0.0, -1.0, 2.0, -2.0, 0.0, 0.0, -1.0, 0.0],
        [0.0, -1.5, 0.0, 0.0, 0.0, 0.0, -2.5, -1.0],
        [0.0, 0.0, 0.0, -1.0, 1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, -1.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, -2.0, 0.0, 1.0],
    ]);
    (MMatrix::from_rows(&l), u)
}

/// First matrix of the subdiagonal-bounds pair.
pub fn a_45() -> MMatrix {
    MMatrix::from_rows(&[[0.0, 0.0, 0.0], [-1.0, 0.0, 0.0], [0.0, -1.0, 1.0]])
}

/// Second matrix of the subdiagonal-bounds pair.
pub fn b_45() -> MMatrix {
    MMatrix::from_rows(&[[0.0, 0.0, 0.0], [-1.0, 0.0, 0.0], [-1.0, -1.0, 1.0]])
}

/// LBU factors (L, B, U) of [`a_eg3`].
pub fn a_eg3_lbu() -> (MMatrix, MMatrix, MMatrix) {
    let mut l = vec![vec![0.0; 8]; 8];
    let mut u = vec![vec![0.0; 8]; 8];
    for i in 0..8 {
        l[i][i] = 1.0;
        u[i][i] = 1.0;
    }
    l[4][2] = -1.0;
    l[7][0] = -1.0;
    u[0][1] = -1.0;
    u[2][4] = -1.0;
    let b = MMatrix::from_rows(&[
        [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, -1.0, 0.0, -1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0],
        [0.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    ]);
    (MMatrix::from_rows(&l), b, MMatrix::from_rows(&u))
}
