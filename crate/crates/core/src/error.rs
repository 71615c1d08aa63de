//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by model construction, data validation, numerics, and I/O.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter or argument is outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Input data violates a dataset invariant.
    #[error("data error: {0}")]
    Data(String),

    /// An iterative or stochastic procedure failed to produce a usable result.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// A file has the wrong structure or an unparseable field.
    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn data(msg: impl Into<String>) -> Self {
        Error::Data(msg.into())
    }
    pub fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }
    pub fn format(msg: impl Into<String>) -> Self {
        Error::Format(msg.into())
    }
}
