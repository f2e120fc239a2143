//! CLI error type and the exit-code table.
//!
//! Exit codes: 0 success, 1 I/O or internal failure, 2 usage errors
//! (argument parsing), 3 file parse errors, 4 validity violations
//! (parameters, grids, adversary queries), 5 ambiguous readout — the
//! key does not match the ciphertext.

use std::fmt;

use hfe_core::{AnalysisError, GameError, HfeError, QubitError};

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Parse(String),
    Validity(String),
    Ambiguous(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Parse(_) => 3,
            CliError::Validity(_) => 4,
            CliError::Ambiguous(_) => 5,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(msg) => write!(f, "i/o error: {msg}"),
            CliError::Parse(msg) => write!(f, "parse error: {msg}"),
            CliError::Validity(msg) => write!(f, "validity error: {msg}"),
            CliError::Ambiguous(msg) => write!(f, "ambiguous readout: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<HfeError> for CliError {
    fn from(e: HfeError) -> Self {
        match e {
            HfeError::Qubit(QubitError::AmbiguousState { .. }) => {
                CliError::Ambiguous(e.to_string())
            }
            HfeError::ParseBits(_) | HfeError::ParseHex(_) => CliError::Parse(e.to_string()),
            other => CliError::Validity(other.to_string()),
        }
    }
}

impl From<QubitError> for CliError {
    fn from(e: QubitError) -> Self {
        match e {
            QubitError::AmbiguousState { .. } => CliError::Ambiguous(e.to_string()),
            other => CliError::Validity(other.to_string()),
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        CliError::Validity(e.to_string())
    }
}

impl From<GameError> for CliError {
    fn from(e: GameError) -> Self {
        match e {
            GameError::Hfe(inner) => CliError::from(inner),
            other => CliError::Validity(other.to_string()),
        }
    }
}
