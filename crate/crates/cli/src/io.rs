use crate::error::CliError;
use crate::output::json_string;
use serde_json::Value;
use std::path::{Path, PathBuf};

pub fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
    serde_json::from_str(&text).map_err(|e| CliError::Malformed { path: path.to_owned(), detail: e.to_string() })
}

pub fn malformed(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Malformed { path: path.to_owned(), detail: e.to_string() }
}

/// Write to `out`, or to stdout when absent.
pub fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io { path: path.clone(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn emit_json(v: &Value, out: Option<&PathBuf>) -> Result<(), CliError> {
    emit(&json_string(v), out)
}
