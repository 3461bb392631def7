use std::path::PathBuf;

use thiserror::Error;

use dotent_core::Error as CoreError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("cannot write output: {0}")]
    Write(#[from] std::io::Error),

    #[error(transparent)]
    Core(#[from] CoreError),
}

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;
pub const EXIT_INVALID_DATA: u8 = 4;

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Read { .. } => EXIT_USAGE,
            CliError::Write(_) => 1,
            CliError::Core(err) => match err.root() {
                CoreError::Numerical(_)
                | CoreError::StepUnderflow { .. }
                | CoreError::ExpOverflow(_) => EXIT_NUMERICAL,
                CoreError::InvalidDensity(_) => EXIT_INVALID_DATA,
                _ => EXIT_USAGE,
            },
        }
    }
}
