//! Error type shared by every module, with the CLI exit-code mapping.

use thiserror::Error;

/// Failure modes of the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Caller violated a documented precondition (ring/order mismatch, bad argument).
    #[error("usage error: {0}")]
    Usage(String),
    /// Input lies outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A series expansion or Newton solve did not converge.
    #[error("convergence error: {0}")]
    Convergence(String),
    /// Droplet data failed validation.
    #[error("geometry error: {0}")]
    Geometry(String),
    /// A numerical invariant (positivity, diagonal vanishing) failed.
    #[error("numerical error: {0}")]
    Numerical(String),
    /// The fixed-point iteration diverged.
    #[error("iteration error: {0}")]
    Iteration(String),
    /// Working precision is insufficient for the requested computation.
    #[error("precision error: {0}")]
    Precision(String),
    /// Invalid configuration value.
    #[error("config error: `{key}`: {msg}")]
    Config { key: String, msg: String },
    /// File system failure.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Builds a configuration error naming `key`.
    pub fn config(key: &str, msg: impl Into<String>) -> Self {
        Error::Config {
            key: key.to_string(),
            msg: msg.into(),
        }
    }

    /// Exit code for the command line front end: 2 for configuration or
    /// usage problems, 3 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config { .. } | Error::Usage(_) | Error::Io(_) => 2,
            _ => 3,
        }
    }
}

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
