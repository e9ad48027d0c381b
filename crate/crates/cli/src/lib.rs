//! File formats, parameter handling, and the acceptance checks behind the
//! `staircase` command-line tool.

pub mod commands;
pub mod format;
pub mod output;
pub mod params;
pub mod verify;

use staircase_core::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const IO: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const PARAMETER: u8 = 3;
    pub const CAP: u8 = 4;
    pub const NUMERICAL: u8 = 5;
    pub const VERIFICATION: u8 = 6;
    pub const MALFORMED_INPUT: u8 = 7;
    pub const INVALID_TABLEAU: u8 = 8;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error(transparent)]
    Document(#[from] format::DocError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0} acceptance check(s) failed")]
    Verification(usize),
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.into())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Core(e) => match e {
                Error::Parameter(_) | Error::Domain(_) => exit::PARAMETER,
                Error::CapExceeded { .. } => exit::CAP,
                Error::Numerical(_) => exit::NUMERICAL,
                Error::OutsideShape { .. } | Error::DuplicateCell { .. } => exit::MALFORMED_INPUT,
                Error::Structural(_) => exit::INVALID_TABLEAU,
            },
            CliError::Document(format::DocError::Malformed(_)) => exit::MALFORMED_INPUT,
            CliError::Document(format::DocError::Invalid(_)) => exit::INVALID_TABLEAU,
            CliError::Io(_) => exit::IO,
            CliError::Verification(_) => exit::VERIFICATION,
        }
    }
}
