use std::process::ExitCode;

use thiserror::Error;

/// Errors carry the exit-code class they map to.
#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or schema-violating input, bad flags, bad environment.
    #[error("input error: {0}")]
    Input(String),
    /// A check or an estimation failed on valid input.
    #[error("{0}")]
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Input(_) => ExitCode::from(2),
            CliError::Check(_) => ExitCode::from(1),
        }
    }

    pub fn input(e: impl std::fmt::Display) -> Self {
        CliError::Input(e.to_string())
    }

    pub fn check(e: impl std::fmt::Display) -> Self {
        CliError::Check(e.to_string())
    }
}
