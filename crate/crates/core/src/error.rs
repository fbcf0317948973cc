use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of the operation (n < 2, bad key, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// A checked structural invariant did not hold.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("operators do not commute: [{left}, {right}] residual {residual:.3e} exceeds {tol:.1e}")]
    NotCommuting {
        left: String,
        right: String,
        residual: f64,
        tol: f64,
    },

    #[error("exchange undefined for distinct factors")]
    ExchangeUndefined,

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("cache file {path}: {reason}")]
    CacheFormat { path: PathBuf, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
