//! Error bucket for the command front end; each bucket maps to one
//! process exit code.

use std::fmt;

use wseq_core::abgroup::AbError;
use wseq_core::chaincx::ChainError;
use wseq_core::classify::ClError;
use wseq_core::dga::DgaError;
use wseq_core::whitehead::WhError;

use crate::formats::ParseError;

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Positioned syntax or name error in an input file.  Exit 2.
    Parse { path: String, err: ParseError },
    /// Input that parses but fails a validity or usage check.  Exit 2.
    Invalid(String),
    /// A configured resource bound was exceeded.  Exit 3.
    Resource(String),
    /// An invariant the engine guarantees has failed.  Exit 4.
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Invalid(_) => 2,
            CliError::Resource(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse { path, err } => write!(f, "{}: {}", path, err),
            CliError::Invalid(m) => write!(f, "invalid input: {}", m),
            CliError::Resource(m) => write!(f, "resource bound: {}", m),
            CliError::Internal(m) => write!(f, "internal error: {}", m),
        }
    }
}

impl From<DgaError> for CliError {
    fn from(e: DgaError) -> Self {
        match e {
            DgaError::ResourceBound { .. } => CliError::Resource(e.to_string()),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<ChainError> for CliError {
    fn from(e: ChainError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<AbError> for CliError {
    fn from(e: AbError) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<WhError> for CliError {
    fn from(e: WhError) -> Self {
        match e {
            WhError::Dga(d) => d.into(),
            WhError::ExactnessFailure { .. } => CliError::Internal(e.to_string()),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<ClError> for CliError {
    fn from(e: ClError) -> Self {
        match e {
            ClError::Dga(d) => d.into(),
            ClError::Wh(w) => w.into(),
            ClError::UndefinedAction { .. } => CliError::Internal(e.to_string()),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Invalid(e.to_string())
    }
}
