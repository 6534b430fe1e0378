use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Caller supplied values that violate an operation's preconditions.
    #[error("invalid input: {0}")]
    Input(String),

    /// A file parsed but its structure is inconsistent (ids, dimensions).
    #[error("format error in {path}: {message}")]
    Format { path: PathBuf, message: String },

    /// A cell could not be parsed. `line` and `column` are 1-based.
    #[error("parse error in {path} at line {line}, column {column}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("numeric error: {0}")]
    Numeric(String),

    /// An iterative solver hit its iteration cap. `last_iterate` holds the
    /// final parameter vector so callers can inspect or reuse it.
    #[error("no convergence after {iterations} iterations: {message}")]
    Convergence {
        iterations: usize,
        message: String,
        last_iterate: Vec<f64>,
    },

    #[error("metric error: {0}")]
    Metric(String),

    /// An error raised while scoring one held-out drug-target pair.
    #[error("pair (drug {drug}, target {target}): {source}")]
    AtPair {
        drug: usize,
        target: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// Coarse failure classes, used for CLI exit codes and C error codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Data,
    Config,
    Numeric,
    Metric,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Input(_) | Error::Format { .. } | Error::Parse { .. } | Error::Io { .. } => {
                ErrorClass::Data
            }
            Error::Config(_) => ErrorClass::Config,
            Error::Numeric(_) | Error::Convergence { .. } => ErrorClass::Numeric,
            Error::Metric(_) => ErrorClass::Metric,
            Error::AtPair { source, .. } => source.class(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
