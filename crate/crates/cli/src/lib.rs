//! Command-line surface for the ι-complex engine: file formats, the
//! ConnectedReport, and the subcommand implementations.

pub mod commands;
pub mod formats;
pub mod report;

use std::fmt;

/// CLI-level errors, mapped onto the exit-code contract:
/// 1 = I/O or parse problems, 2 = semantically invalid input.
#[derive(Debug)]
pub enum CliError {
    Io(String),
    Parse(String),
    Invalid(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Parse(_) => 1,
            CliError::Invalid(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(m) => write!(f, "io error: {m}"),
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Invalid(m) => write!(f, "invalid input: {m}"),
        }
    }
}

impl std::error::Error for CliError {}
