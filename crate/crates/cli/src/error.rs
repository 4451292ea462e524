use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Success.
pub const EXIT_OK: u8 = 0;
/// Unreadable or malformed input, or an output that cannot be written.
pub const EXIT_INPUT: u8 = 1;
/// The model is unstable, infeasible or could not be solved.
pub const EXIT_MODEL: u8 = 2;
/// Bad command line or configuration.
pub const EXIT_USAGE: u8 = 64;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    File { path: PathBuf, source: io::Error },

    #[error("{path}: {source}")]
    Config { path: PathBuf, source: serde_json::Error },

    #[error(transparent)]
    Core(#[from] linealloc::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Core(e) if e.is_model_error() => EXIT_MODEL,
            _ => EXIT_INPUT,
        }
    }

    /// The reader of stdout went away, as with `| head`.
    pub fn is_broken_pipe(&self) -> bool {
        matches!(self, CliError::Core(linealloc::Error::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Core(e.into())
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub type CliResult<T> = std::result::Result<T, CliError>;
