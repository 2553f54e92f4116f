use ribaucour_core::CoreError;
use ribaucour_mesh::MeshError;
use ribaucour_verify::VerifyError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("invalid `{key}`: {reason}")]
    Invalid { key: String, reason: String },
    #[error("invalid configuration: {0}")]
    Core(#[from] CoreError),
    #[error("{0}")]
    Mesh(#[from] MeshError),
    #[error("{0}")]
    Verify(#[from] VerifyError),
    #[error("i/o failure on {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

impl CliError {
    pub fn invalid(key: &str, reason: impl Into<String>) -> Self {
        CliError::Invalid {
            key: key.to_owned(),
            reason: reason.into(),
        }
    }

    /// 1 for bad input, 2 for failures while running, 3 for failed checks.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Invalid { .. } | CliError::Core(_) => 1,
            CliError::Mesh(
                MeshError::GridTooLarge { .. }
                | MeshError::InvalidGrid(_)
                | MeshError::InvalidThreshold(_)
                | MeshError::InvalidPoleTolerance(_),
            ) => 1,
            CliError::Verify(VerifyError::InvalidStep(_)) => 1,
            CliError::Mesh(_) | CliError::Verify(_) | CliError::Io { .. } => 2,
            CliError::VerificationFailed(_) => 3,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
