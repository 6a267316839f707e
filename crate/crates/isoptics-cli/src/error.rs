use std::fmt;

use isoptics_core::ErrorClass;

/// Anything a subcommand can fail with, tagged for the process exit code:
/// 1 config or io, 2 domain, 3 degenerate input, 4 empty result.
#[derive(Debug)]
pub enum CliError {
    Core(isoptics_core::Error),
    Config(String),
    Io(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => e.fmt(f),
            CliError::Config(msg) => write!(f, "config error: {msg}"),
            CliError::Io(msg) => write!(f, "io error: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<isoptics_core::Error> for CliError {
    fn from(e: isoptics_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e.class() {
                ErrorClass::Domain => 2,
                ErrorClass::Degenerate => 3,
                ErrorClass::Empty => 4,
            },
            CliError::Config(_) | CliError::Io(_) => 1,
        }
    }
}
