use nalgebra::DMatrix;

use super::{FactorizationKind, FactorizationResult, SplitJK};
use crate::error::{Error, Result};
use crate::matrix::{schur_complement, MMatrix, Tolerances};
use crate::partitions::finest_encompassing;
use crate::structure::singular_structure;

struct Ctx {
    /// Original singular-class index of each original vertex.
    class_of: Vec<Option<usize>>,
    in_j: Vec<bool>,
    thr: f64,
}

/// Block LU of an M-matrix with a prescribed split of the singular classes.
///
/// Recursion on the leading entry:
/// * nonzero pivot: one elimination step, recurse on the Schur complement;
/// * zero pivot whose class belongs on the `L` side: with `V` the vertices
///   accessed from the leading vertex and `W` the rest,
///   `L = [[A_VV, 0], [A_WV, L'_WW]]` and `U = [[I, 0], [0, U'_WW]]` (up to the
///   symmetric permutation that lists `V` before `W`), recursing on `A_WW`;
/// * otherwise: factor the transpose with `J` and `K` exchanged and transpose
///   the factors back.
///
/// The block lower triangular self-partition of `L` refines `psi`, the finest
/// partition encompassing `F_i, i in J`; the upper self-partition of `U`
/// refines `upsilon`, the finest encompassing `T_i, i in K`.
pub fn factor_lu_partitioned(
    a: &MMatrix,
    split: &SplitJK,
    tol: &Tolerances,
) -> Result<FactorizationResult> {
    let s = singular_structure(a, tol)?;
    split.validate(s.m())?;
    let n = a.n();
    let mut class_of = vec![None; n];
    for (i, class) in s.classes.iter().enumerate() {
        for &v in class {
            class_of[v] = Some(i);
        }
    }
    let ctx = Ctx {
        class_of,
        in_j: (0..s.m()).map(|i| split.j.contains(&i)).collect(),
        thr: a.zero_threshold(),
    };
    let orig: Vec<usize> = (0..n).collect();
    let (l, u) = recurse(a.entries().clone(), &orig, false, &ctx)?;

    let f_sets: Vec<Vec<usize>> = split.j.iter().map(|&i| s.f[i].to_vec()).collect();
    let t_sets: Vec<Vec<usize>> = split.k.iter().map(|&i| s.t[i].to_vec()).collect();
    Ok(FactorizationResult {
        kind: FactorizationKind::BlockLU,
        l: MMatrix::with_zero_tol(l, a.zero_tol())?,
        u: MMatrix::with_zero_tol(u, a.zero_tol())?,
        b: None,
        chi: None,
        split: Some(split.clone()),
        psi: finest_encompassing(&f_sets, n)?,
        upsilon: finest_encompassing(&t_sets, n)?,
    })
}

fn recurse(
    a: DMatrix<f64>,
    orig: &[usize],
    transposed: bool,
    ctx: &Ctx,
) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let k = a.nrows();
    if k == 0 {
        return Ok((DMatrix::zeros(0, 0), DMatrix::zeros(0, 0)));
    }
    let pivot = a[(0, 0)];
    if pivot.abs() > ctx.thr {
        let rest: Vec<usize> = (1..k).collect();
        let schur = schur_complement(&a, 0, &rest);
        let (lh, uh) = recurse(schur, &orig[1..], transposed, ctx)?;
        let mut l = DMatrix::zeros(k, k);
        let mut u = DMatrix::zeros(k, k);
        l[(0, 0)] = 1.0;
        for i in 1..k {
            l[(i, 0)] = a[(i, 0)] / pivot;
        }
        u.row_mut(0).copy_from(&a.row(0));
        l.view_mut((1, 1), (k - 1, k - 1)).copy_from(&lh);
        u.view_mut((1, 1), (k - 1, k - 1)).copy_from(&uh);
        return Ok((l, u));
    }

    let class = ctx.class_of[orig[0]].ok_or(Error::ZeroPivot { index: orig[0] })?;
    if ctx.in_j[class] == transposed {
        let (lt, ut) = recurse(a.transpose(), orig, !transposed, ctx)?;
        return Ok((ut.transpose(), lt.transpose()));
    }

    let in_v = accessed_from_first(&a, ctx.thr);
    let v: Vec<usize> = (0..k).filter(|&i| in_v[i]).collect();
    let w: Vec<usize> = (0..k).filter(|&i| !in_v[i]).collect();
    let a_ww = DMatrix::from_fn(w.len(), w.len(), |r, c| a[(w[r], w[c])]);
    let orig_w: Vec<usize> = w.iter().map(|&i| orig[i]).collect();
    let (lh, uh) = recurse(a_ww, &orig_w, transposed, ctx)?;

    let mut l = DMatrix::zeros(k, k);
    let mut u = DMatrix::zeros(k, k);
    for &r in &v {
        for &c in &v {
            l[(r, c)] = a[(r, c)];
        }
        u[(r, r)] = 1.0;
    }
    for (wr, &r) in w.iter().enumerate() {
        for &c in &v {
            l[(r, c)] = a[(r, c)];
        }
        for (wc, &c) in w.iter().enumerate() {
            l[(r, c)] = lh[(wr, wc)];
            u[(r, c)] = uh[(wr, wc)];
        }
    }
    Ok((l, u))
}

/// Vertices reachable from vertex 0 through structurally nonzero entries.
fn accessed_from_first(a: &DMatrix<f64>, thr: f64) -> Vec<bool> {
    let k = a.nrows();
    let mut seen = vec![false; k];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..k {
            if !seen[j] && a[(i, j)].abs() > thr {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen
}
