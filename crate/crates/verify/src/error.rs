use ribaucour_core::CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum VerifyError {
    /// A stencil point is singular, or the singularity margin changes sign
    /// across the stencil.
    #[error("finite-difference stencil around ({u1}, {u2}) along axis {axis} meets the singular set")]
    StencilHitsSingularity { u1: f64, u2: f64, axis: usize },
    #[error("finite-difference step {0} outside (1e-9, 1e-2)")]
    InvalidStep(f64),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("failed to write report: {0}")]
    Io(#[from] std::io::Error),
    #[error("failed to encode report: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = VerifyError> = std::result::Result<T, E>;
