use thiserror::Error;

#[derive(Debug, Error)]
pub enum MeshError {
    #[error("grid {n1}x{n2} exceeds the vertex cap {cap}")]
    GridTooLarge { n1: usize, n2: usize, cap: usize },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid mask threshold {0}")]
    InvalidThreshold(f64),
    #[error("pole tolerance must be positive, got {0}")]
    InvalidPoleTolerance(f64),
    #[error("point too close to the projection pole (1 - x4 = {gap:e})")]
    NearPole { gap: f64 },
    #[error("no fully regular grid cell; the mesh would be empty")]
    EmptyMesh,
    #[error("OBJ export needs projected 3-D vertices")]
    UnprojectedMesh,
    #[error("i/o failure: {0}")]
    IoFailure(#[from] std::io::Error),
    #[error("failed to encode JSON: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = MeshError> = std::result::Result<T, E>;
