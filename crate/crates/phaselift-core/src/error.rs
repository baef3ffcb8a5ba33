//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian (max asymmetry {max_asymmetry:.3e} > {tolerance:.3e})")]
    NotHermitian { max_asymmetry: f64, tolerance: f64 },

    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),

    #[error("eigendecomposition did not converge after {sweeps} sweeps (off-diagonal residual {residual:.3e})")]
    EigNonConvergence { sweeps: usize, residual: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serialization(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
