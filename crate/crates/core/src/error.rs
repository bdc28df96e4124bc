//! Error type shared across the library.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, BtError>;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum BtError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("insufficient truncation: need bidegree ({need_p},{need_q}), have ({have_p},{have_q}) in {context}")]
    InsufficientTruncation { need_p: u32, need_q: u32, have_p: u32, have_q: u32, context: String },

    #[error("scalar not invertible in the Laurent ring: {0}")]
    NotInvertible(String),

    #[error("expected a real scalar, got {0}")]
    NotReal(String),

    #[error("sign indeterminate under rational π bounds: {0}")]
    IndeterminateSign(String),

    #[error("jet is not holomorphic where required: {0}")]
    NotHolomorphic(String),

    #[error("nonzero constant term where zero required: {0}")]
    NonzeroConstant(String),

    #[error("zero or non-invertible constant term: {0}")]
    SingularConstant(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("Hessian/metric not positive definite: {0}")]
    NotPositiveDefinite(String),

    #[error("input not in required form: {0}")]
    InvalidInput(String),

    #[error("normal-frame violation: {0}")]
    FrameViolation(String),

    #[error("frame is not polarized (Θ ≠ ω): {0}")]
    NotPolarized(String),

    #[error("exact eigendecomposition unavailable and float fallback disabled: {0}")]
    InexactEigensystem(String),

    #[error("symbol not integrable against the model weight: {0}")]
    NotIntegrable(String),

    #[error("ill-conditioned sample set (condition estimate {0:.3e})")]
    IllConditioned(f64),

    #[error("{0}")]
    Other(String),
}
