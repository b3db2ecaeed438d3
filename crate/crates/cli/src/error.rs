use std::path::PathBuf;

use thiserror::Error;

/// Exit code for malformed flags; clap uses it for its own usage errors.
pub const EXIT_USAGE: i32 = 2;
/// Exit code when root refinement or a numeric limit fails to converge.
pub const EXIT_CONVERGENCE: i32 = 3;
/// Exit code for well-formed input outside the mathematical domain.
pub const EXIT_DOMAIN: i32 = 4;
/// Exit code for file and stream failures.
pub const EXIT_IO: i32 = 5;
/// Exit code when `legendre --check` measures a deviation above tolerance.
pub const EXIT_CHECK_FAILED: i32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] envelope_core::Error),

    #[error("invalid range: {0}")]
    InvalidRange(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed CSV: {0}")]
    Csv(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("stream error: {0}")]
    Stream(#[from] std::io::Error),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn is_convergence(&self) -> bool {
        use envelope_core::Error as E;
        matches!(
            self,
            CliError::Core(
                E::NonConvergence { .. } | E::ToleranceNotAchieved { .. } | E::NoSignChange { .. }
            )
        )
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Stream(_) => EXIT_IO,
            _ if self.is_convergence() => EXIT_CONVERGENCE,
            _ => EXIT_DOMAIN,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
