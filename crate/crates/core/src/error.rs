use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Everything that can go wrong in the core library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A parameter is outside the region where the quantity is defined.
    Parameter(String),
    /// An index or argument outside the domain of an operation.
    Domain(String),
    /// A box `(row, col)` that does not exist in the size-`n` staircase.
    OutsideShape { n: usize, row: usize, col: usize },
    /// The same box was given twice.
    DuplicateCell { row: usize, col: usize },
    /// Exhaustive enumeration refused because `n` exceeds the cap.
    CapExceeded { n: usize, cap: usize },
    /// Root isolation lost a root or a sign change.
    Numerical(String),
    /// A tableau that should have been valid was not.
    Structural(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parameter(msg) => write!(f, "parameter error: {msg}"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::OutsideShape { n, row, col } => {
                write!(f, "box ({row},{col}) lies outside the staircase of size {n}")
            }
            Error::DuplicateCell { row, col } => write!(f, "box ({row},{col}) given twice"),
            Error::CapExceeded { n, cap } => {
                write!(f, "enumeration of size {n} refused (cap is {cap})")
            }
            Error::Numerical(msg) => write!(f, "numerical failure: {msg}"),
            Error::Structural(msg) => write!(f, "structural error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
