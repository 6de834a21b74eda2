//! Command implementations for the `wyko` binary.

pub mod commands;
pub mod verify;

use std::fmt;
use std::io;

/// Exit codes: 0 success, 1 verification failure, 2 argument error, 3 I/O error.
#[derive(Debug)]
pub enum CliError {
    Argument(String),
    Io { context: String, source: io::Error },
    VerificationFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::VerificationFailed(_) => 1,
            CliError::Argument(_) => 2,
            CliError::Io { .. } => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Argument(msg) => write!(f, "{msg}"),
            CliError::Io { context, source } => write!(f, "{context}: {source}"),
            CliError::VerificationFailed(n) => write!(f, "{n} verification check(s) failed"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<wyko_core::Error> for CliError {
    fn from(e: wyko_core::Error) -> Self {
        CliError::Argument(e.to_string())
    }
}

pub(crate) fn io_error(context: impl Into<String>) -> impl FnOnce(io::Error) -> CliError {
    let context = context.into();
    move |source| CliError::Io { context, source }
}

/// Converts a user-supplied angle to radians.
pub fn to_radians(value: f64, degrees: bool) -> f64 {
    if degrees {
        value.to_radians()
    } else {
        value
    }
}
