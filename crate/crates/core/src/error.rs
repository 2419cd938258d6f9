use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Invalid scenario, role tuple, sweep spec or config file content.
    #[error("configuration error: {0}")]
    Config(String),

    /// NaN, overflow, or a probability outside the tolerated range.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// Quadrature failed to converge within its subdivision budget.
    #[error("oracle error: {0}")]
    Oracle(String),

    /// The slope estimate needs strictly positive outage at both SNR points.
    #[error("diversity order undefined: outage is zero at {rho_db} dB")]
    UndefinedDiversity { rho_db: f64 },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("serialization error: {0}")]
    Serialize(String),
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }

    /// Process exit code for the CLI: 1 for bad input (configuration, paths),
    /// 2 for numeric or oracle failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Io { .. } => 1,
            _ => 2,
        }
    }
}
