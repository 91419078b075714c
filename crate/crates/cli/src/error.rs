use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] skeleton_core::Error),

    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },

    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },

    #[error("malformed JSON in {path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },

    #[error("{0}")]
    Usage(String),

    #[error("the realized curve does not reproduce the requested cover")]
    VerificationFailed,
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Read { .. } | CliError::Write { .. } => "Io",
            CliError::Json { .. } => "MalformedJson",
            CliError::Usage(_) => "Usage",
            CliError::VerificationFailed => "VerificationFailed",
        }
    }

    /// 2 for problems with the input, 1 for internal failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if !e.is_user_error() => 1,
            CliError::VerificationFailed => 1,
            _ => 2,
        }
    }
}
