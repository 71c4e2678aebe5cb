use std::path::PathBuf;

use jbound_core::Error as CoreError;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// Failure outside the documented contract (numerical trouble).
    pub const INTERNAL: i32 = 1;
    pub const INAPPLICABLE: i32 = 2;
    pub const SPEC: i32 = 3;
    pub const CAP_EXCEEDED: i32 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid job spec: {0}")]
    Spec(String),
    #[error("cannot read {}: {source}", path.display())]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Spec(_) | CliError::Read { .. } => exit::SPEC,
            CliError::Core(e) => match e {
                CoreError::CapExceeded { .. } => exit::CAP_EXCEEDED,
                CoreError::Inapplicable { .. } => exit::INAPPLICABLE,
                CoreError::InvalidLevel(_)
                | CoreError::LevelMismatch { .. }
                | CoreError::NotInSl2 { .. }
                | CoreError::NotContained(_)
                | CoreError::InvalidField(_)
                | CoreError::InvalidPlaces(_) => exit::SPEC,
                CoreError::PrecisionLoss(_)
                | CoreError::Domain(_)
                | CoreError::InvariantViolation(_) => exit::INTERNAL,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
