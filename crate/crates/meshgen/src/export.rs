//! OBJ and JSON writers. Both are pure functions of the mesh, so identical
//! meshes give identical bytes.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::error::{MeshError, Result};
use crate::grid::GridSpec;
use crate::mesh::{Attributes, SurfaceMesh};

/// `v x y z` lines with 17 significant digits, then 1-indexed `f i j k`.
pub fn write_obj<W: Write>(mesh: &SurfaceMesh, out: &mut W) -> Result<()> {
    if mesh.faces.is_empty() {
        return Err(MeshError::EmptyMesh);
    }
    let verts = mesh.projected.as_ref().ok_or(MeshError::UnprojectedMesh)?;
    for v in verts {
        writeln!(out, "v {:.16e} {:.16e} {:.16e}", v[0], v[1], v[2])?;
    }
    for f in &mesh.faces {
        writeln!(out, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1)?;
    }
    Ok(())
}

pub fn export_obj(mesh: &SurfaceMesh, path: &Path) -> Result<()> {
    // Check before creating the file so a refused export leaves nothing behind.
    if mesh.faces.is_empty() {
        return Err(MeshError::EmptyMesh);
    }
    if mesh.projected.is_none() {
        return Err(MeshError::UnprojectedMesh);
    }
    let mut w = BufWriter::new(File::create(path)?);
    write_obj(mesh, &mut w)?;
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct GridJson {
    u1: [f64; 2],
    u2: [f64; 2],
    n: [usize; 2],
}

#[derive(Serialize)]
struct MeshJson<'a, P: Serialize> {
    params: &'a P,
    grid: GridJson,
    vertices: &'a [[f64; 4]],
    #[serde(skip_serializing_if = "Option::is_none")]
    projected: Option<&'a [[f64; 3]]>,
    /// Lattice index of each vertex.
    source: &'a [usize],
    mask: &'a [bool],
    faces: &'a [[usize; 3]],
    attributes: &'a Attributes,
}

/// The mesh as `{"params", "grid", "vertices", "projected"?, "source", "mask",
/// "faces", "attributes"}`. Vertices are the 4-D points; `mask` runs over the
/// whole lattice in row-major order.
pub fn mesh_json<P: Serialize>(mesh: &SurfaceMesh, params: &P) -> Result<String> {
    let GridSpec { u1, u2, n } = mesh.grid;
    let doc = MeshJson {
        params,
        grid: GridJson { u1, u2, n },
        vertices: &mesh.vertices,
        projected: mesh.projected.as_deref(),
        source: &mesh.source,
        mask: &mesh.mask,
        faces: &mesh.faces,
        attributes: &mesh.attributes,
    };
    let mut s = serde_json::to_string(&doc)?;
    s.push('\n');
    Ok(s)
}

pub fn export_json<P: Serialize>(mesh: &SurfaceMesh, params: &P, path: &Path) -> Result<()> {
    if mesh.faces.is_empty() {
        return Err(MeshError::EmptyMesh);
    }
    std::fs::write(path, mesh_json(mesh, params)?)?;
    Ok(())
}
