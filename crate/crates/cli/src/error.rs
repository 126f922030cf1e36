use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const CHECK_FAILED: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const CONFIG: u8 = 3;
    pub const RESOURCE: u8 = 4;
    pub const NUMERICAL: u8 = 5;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Usage(String),
    #[error("cannot read config {path}: {message}")]
    Config { path: PathBuf, message: String },
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] qens_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use qens_core::Error as E;
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Config { .. } | CliError::Io { .. } => exit::CONFIG,
            CliError::Core(e) => match e {
                E::Resource(_) => exit::RESOURCE,
                E::Csv(_) | E::Parse { .. } | E::Io(_) => exit::CONFIG,
                _ => exit::NUMERICAL,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(CliError::Usage(msg.into()))
}
