//! Factor-and-verify over a whole corpus, one matrix per work item.

use serde::Serialize;

use crate::error::Result;
use crate::factorization::{
    factor_lbu, factor_lu_partitioned, factor_lu_spurs, strategy_min_blocks, strategy_permutation,
    FactorizationResult, SplitJK,
};
use crate::matrix::{MMatrix, Tolerances};
use crate::par::{map_slice, Execution};
use crate::structure::singular_structure;
use crate::verification::{verify, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FactorMode {
    /// Block LU with the split chosen to minimise the number of blocks.
    LuMinBlocks,
    /// Block LU with every singular class placed in `L`.
    LuAllInL,
    /// Block LU with every singular class placed in `U`.
    LuAllInU,
    LuSpurs,
    Lbu,
    /// Triangular LU of `P A P^T` after the symmetric permutation strategy.
    Permuted,
}

impl FactorMode {
    pub const ALL: [FactorMode; 6] = [
        FactorMode::LuMinBlocks,
        FactorMode::LuAllInL,
        FactorMode::LuAllInU,
        FactorMode::LuSpurs,
        FactorMode::Lbu,
        FactorMode::Permuted,
    ];
}

/// The matrix that was factored (differs from the input only for
/// [`FactorMode::Permuted`]) together with its factors.
pub fn factor(a: &MMatrix, mode: FactorMode, tol: &Tolerances) -> Result<(MMatrix, FactorizationResult)> {
    let s = || singular_structure(a, tol);
    let r = match mode {
        FactorMode::LuMinBlocks => factor_lu_partitioned(a, &strategy_min_blocks(&s()?), tol)?,
        FactorMode::LuAllInL => factor_lu_partitioned(a, &SplitJK::all_in_l(s()?.m()), tol)?,
        FactorMode::LuAllInU => {
            let m = s()?.m();
            factor_lu_partitioned(a, &SplitJK::new([], 0..m), tol)?
        }
        FactorMode::LuSpurs => factor_lu_spurs(a, tol)?,
        FactorMode::Lbu => factor_lbu(a, tol)?,
        FactorMode::Permuted => {
            let p = strategy_permutation(&s()?)?;
            let pa = p.apply_symmetric(a)?;
            let m = singular_structure(&pa, tol)?.m();
            let r = factor_lu_partitioned(&pa, &SplitJK::all_in_l(m), tol)?;
            return Ok((pa, r));
        }
    };
    Ok((a.clone(), r))
}

pub fn factor_and_verify(a: &MMatrix, mode: FactorMode, tol: &Tolerances) -> Result<VerificationReport> {
    let (target, r) = factor(a, mode, tol)?;
    verify(&target, &r, tol)
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepOutcome {
    pub index: usize,
    pub mode: FactorMode,
    pub passed: bool,
    pub failed_checks: Vec<String>,
    pub error: Option<String>,
}

/// Runs every mode on every matrix. Outcomes are ordered by matrix, then mode.
pub fn sweep(
    corpus: &[MMatrix],
    modes: &[FactorMode],
    tol: &Tolerances,
    exec: Execution,
) -> Vec<SweepOutcome> {
    let per_matrix = map_slice(corpus, exec, |a| {
        modes
            .iter()
            .map(|&mode| match factor_and_verify(a, mode, tol) {
                Ok(rep) => SweepOutcome {
                    index: 0,
                    mode,
                    passed: rep.overall,
                    failed_checks: rep.failures().iter().map(|c| c.name.clone()).collect(),
                    error: None,
                },
                Err(e) => SweepOutcome {
                    index: 0,
                    mode,
                    passed: false,
                    failed_checks: Vec::new(),
                    error: Some(e.to_string()),
                },
            })
            .collect::<Vec<_>>()
    });
    per_matrix
        .into_iter()
        .enumerate()
        .flat_map(|(i, v)| {
            v.into_iter().map(move |mut o| {
                o.index = i;
                o
            })
        })
        .collect()
}
