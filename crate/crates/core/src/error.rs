use thiserror::Error;

/// Errors produced by the numerical and frame-theoretic operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid matrix data: expected {expected} entries, got {got}")]
    InvalidData { expected: usize, got: usize },

    #[error("non-finite entry at position {0}")]
    NonFinite(usize),

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric (max deviation {deviation:e})")]
    NotSymmetric { deviation: f64 },

    #[error("basis columns are not orthonormal (defect {defect:e})")]
    NotOrthonormal { defect: f64 },

    #[error("matrix is not invertible")]
    NotInvertible,

    #[error("eigensolver did not converge (off-diagonal norm {off_norm:e})")]
    NoConvergence { off_norm: f64 },

    #[error("weight must be positive at index {index}, got {weight}")]
    NonPositiveWeight { index: usize, weight: f64 },

    #[error("family sizes differ: {left} vs {right}")]
    FamilySizeMismatch { left: usize, right: usize },

    #[error("block count mismatch: expected {expected}, got {got}")]
    BlockCountMismatch { expected: usize, got: usize },

    #[error("not a fusion frame (lower bound {lower:e})")]
    NotAFusionFrame { lower: f64 },

    #[error("vector {vector} at index {index} lies outside its subspace (residual {residual:e})")]
    OutsideSubspace { index: usize, vector: usize, residual: f64 },

    #[error("local frame hypothesis violated at index {index}: lower bound {lower:e}")]
    HypothesisViolation { index: usize, lower: f64 },

    #[error("{size} indices exceed the exhaustive pattern cap of {cap}; enable sampling")]
    PatternCapExceeded { size: usize, cap: usize },

    #[error("index set of size {0} is too large for a 64-bit pattern mask")]
    IndexSetTooLarge(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
