//! Meshes of curvature-line surfaces: lattice sampling with the near-singular
//! set masked out, stereographic projection to R³, and OBJ/JSON export.

mod error;
pub mod export;
pub mod grid;
pub mod mesh;
pub mod projection;

pub use error::{MeshError, Result};
pub use export::{export_json, export_obj, mesh_json, write_obj};
pub use grid::{sample_grid, GridSpec, Mask, MaskTally, SampledField, DEFAULT_MASK_THRESHOLD};
pub use mesh::{tessellate, Attributes, SurfaceMesh};
pub use projection::{project_field, project_stereographic, ProjectionKind, ProjectionSpec};

use ribaucour_core::CurvatureLineSurface;
use serde::Serialize;

/// Counts describing one generated mesh.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeshSummary {
    pub lattice_vertices: usize,
    pub vertices: usize,
    pub faces: usize,
    pub masked: MaskTally,
    pub masked_fraction: f64,
    pub min_abs_margin: Option<f64>,
    pub components: usize,
}

/// Sample, project and tessellate in one go.
pub fn build_mesh(
    surface: &dyn CurvatureLineSurface,
    grid: &GridSpec,
    mask_threshold: f64,
    projection: &ProjectionSpec,
) -> Result<(SurfaceMesh, MeshSummary)> {
    let mut field = sample_grid(surface, grid, mask_threshold)?;
    let projected = project_field(&mut field, projection);
    let mesh = tessellate(&field, projected.as_deref())?;
    let summary = MeshSummary {
        lattice_vertices: grid.len(),
        vertices: mesh.vertices.len(),
        faces: mesh.faces.len(),
        masked: field.tally(),
        masked_fraction: field.masked_fraction(),
        min_abs_margin: field.min_abs_margin(),
        components: mesh.connected_components(),
    };
    Ok((mesh, summary))
}
