use serde_json::Value;
use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {detail}")]
    Malformed { path: PathBuf, detail: String },
    /// The input parses but breaks a constraint it must satisfy.
    #[error("input constraint violated: {detail}")]
    Constraint { detail: String, report: Value },
    /// A computation that should succeed on valid input did not.
    #[error("check failed: {0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Malformed { .. } => 1,
            CliError::Failed(_) => 2,
            CliError::Constraint { .. } => 3,
        }
    }

    pub fn usage(e: impl std::fmt::Display) -> Self {
        CliError::Usage(e.to_string())
    }

    pub fn failed(e: impl std::fmt::Display) -> Self {
        CliError::Failed(e.to_string())
    }
}
