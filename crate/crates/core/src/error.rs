use thiserror::Error;

/// Errors raised by the analysis and factorization routines.
///
/// Indices carried by variants are 0-based.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix must be square with n >= 1 (got {rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for order {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("matrix is not an M-matrix")]
    NotMMatrix,
    #[error("structurally zero pivot at index {index}")]
    ZeroPivot { index: usize },
    #[error("split does not partition the {m} singular classes: {reason}")]
    BadSplit { m: usize, reason: String },
    #[error("singular class endpoints {0:?} access each other cyclically")]
    CyclicAccessAmongMu(Vec<usize>),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("negative tolerance {0}")]
    NegativeTolerance(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
