//! LU-type factorizations of singular and nonsingular M-matrices, with the
//! graph and partition machinery they rest on and an independent verifier.
//!
//! All indices are 0-based. Entries whose magnitude is at most
//! `zero_tol * max(1, max |a_ij|)` are treated as structural zeros.

#![allow(clippy::needless_range_loop)]

pub mod batch;
pub mod digraph;
pub mod error;
pub mod factorization;
pub mod fixtures;
pub mod io;
pub mod matrix;
pub mod par;
pub mod partitions;
pub mod random;
pub mod structure;
pub mod verification;

pub use batch::{factor, factor_and_verify, sweep, FactorMode, SweepOutcome};
pub use digraph::{classes_of, closure_of, singular_classes_of, AccessClosure, ClassList, DiGraph};
pub use error::{Error, Result};
pub use factorization::{
    factor_lbu, factor_lu_partitioned, factor_lu_spurs, lbu_pattern, strategy_min_blocks,
    strategy_permutation, FactorizationKind, FactorizationResult, Permutation, SplitJK,
    SpurPattern,
};
pub use matrix::{MMatrix, Tolerances, DEFAULT_ZERO_TOL};
pub use par::Execution;
pub use partitions::OrderedPartition;
pub use structure::{
    lu_existence_condition, singular_structure, subdiagonal_bounds, varga_cai_condition,
    Interval, SingularStructure,
};
pub use verification::{verify, Check, VerificationReport};
