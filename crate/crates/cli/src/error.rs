use coxk_core::{KTheoryError, LinalgError, QuiverError, WittError};
use thiserror::Error;

use crate::formats::FormatError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    KTheory(#[from] KTheoryError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Witt(#[from] WittError),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("cannot read `{path}`: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// Stable identifier printed as `error[CODE]`.
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Quiver(e) => e.code(),
            CliError::KTheory(e) => e.code(),
            CliError::Linalg(e) => e.code(),
            CliError::Witt(e) => e.code(),
            CliError::Format(e) => e.code(),
            CliError::Io { .. } => "IO_ERROR",
            CliError::Usage(_) => "USAGE",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}
