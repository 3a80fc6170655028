//! CLI error type carrying the process exit code.

use std::fmt;
use std::io;
use std::path::Path;

/// Exit codes: 2 invalid arguments, 3 resource cap exceeded, 4 I/O error.
#[derive(Debug)]
pub enum CliError {
    Args(String),
    Resource(String),
    Io(String),
}

impl CliError {
    pub fn io(path: &Path, err: io::Error) -> Self {
        CliError::Io(format!("{}: {err}", path.display()))
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Args(_) => 2,
            CliError::Resource(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Args(msg) => write!(f, "invalid arguments: {msg}"),
            CliError::Resource(msg) => write!(f, "resource limit: {msg}"),
            CliError::Io(msg) => write!(f, "i/o error: {msg}"),
        }
    }
}

impl From<lrising::Error> for CliError {
    fn from(err: lrising::Error) -> Self {
        match err {
            lrising::Error::ResourceLimit { .. } => CliError::Resource(err.to_string()),
            other => CliError::Args(other.to_string()),
        }
    }
}
