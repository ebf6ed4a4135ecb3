use std::path::PathBuf;

/// Errors produced by the numerical pipeline and the sweep driver.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported state {label}: {reason}")]
    UnsupportedState { label: String, reason: String },

    #[error("convergence failure: {0}")]
    Convergence(String),

    #[error("accuracy target missed: {0}")]
    Accuracy(String),

    #[error("non-finite value: {0}")]
    Numeric(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code used by the command-line driver.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) | Error::Domain(_) | Error::UnsupportedState { .. } => 1,
            Error::Convergence(_) | Error::Accuracy(_) | Error::Numeric(_) => 2,
            Error::Io { .. } => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
