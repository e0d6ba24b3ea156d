use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("matrix file line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Core(#[from] threetangle_core::Error),

    #[error("residual-tangle inequality violated: margin {margin:e} at p = {p}")]
    CkwViolation { p: f64, margin: f64 },
}

impl CliError {
    /// 2 for bad input, 3 for an inequality violation, 4 for a state outside the family span.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::CkwViolation { .. } => 3,
            CliError::Core(threetangle_core::Error::OutOfSpan(_)) => 4,
            _ => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
