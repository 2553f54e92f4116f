//! Triangulation of the unmasked lattice cells.

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::error::{MeshError, Result};
use crate::grid::{GridSpec, Mask, SampledField};

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Attributes {
    pub psi1: Vec<f64>,
    pub psi2: Vec<f64>,
    pub lt1: Vec<f64>,
    pub lt2: Vec<f64>,
    pub margin: Vec<f64>,
}

/// Unmasked lattice vertices, compacted, with the triangles of fully regular
/// cells.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceMesh {
    pub grid: GridSpec,
    pub vertices: Vec<[f64; 4]>,
    pub projected: Option<Vec<[f64; 3]>>,
    /// Lattice index of each vertex.
    pub source: Vec<usize>,
    /// Per lattice vertex: `true` when kept.
    pub mask: Vec<bool>,
    pub faces: Vec<[usize; 3]>,
    pub attributes: Attributes,
}

impl SurfaceMesh {
    /// Number of pieces the triangles form when glued along shared vertices.
    pub fn connected_components(&self) -> usize {
        let mut uf = UnionFind::<usize>::new(self.vertices.len());
        let mut used = vec![false; self.vertices.len()];
        for f in &self.faces {
            uf.union(f[0], f[1]);
            uf.union(f[0], f[2]);
            for v in f {
                used[*v] = true;
            }
        }
        let mut roots: Vec<usize> = (0..self.vertices.len()).filter(|v| used[*v]).map(|v| uf.find(v)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }
}

/// Two triangles per cell whose four corners are all unmasked and share the
/// sign of the singularity margin, split along the diagonal from `(i, j)` to
/// `(i+1, j+1)`: `(v00, v10, v11)` and `(v00, v11, v01)`, counter-clockwise in
/// the `(u1, u2)` plane.
pub fn tessellate(field: &SampledField, projected: Option<&[[f64; 3]]>) -> Result<SurfaceMesh> {
    let grid = field.grid;
    let [n1, n2] = grid.n;
    let total = grid.len();

    let mut compact = vec![usize::MAX; total];
    let mut vertices = Vec::new();
    let mut source = Vec::new();
    let mut proj = projected.map(|_| Vec::new());
    let mut attributes = Attributes::default();
    for k in 0..total {
        let (Some(s), Mask::Regular) = (field.samples[k], field.mask[k]) else {
            continue;
        };
        compact[k] = vertices.len();
        vertices.push(s.x);
        source.push(k);
        if let (Some(out), Some(p)) = (proj.as_mut(), projected) {
            out.push(p[k]);
        }
        attributes.psi1.push(s.psi[0]);
        attributes.psi2.push(s.psi[1]);
        attributes.lt1.push(s.lambdas[0]);
        attributes.lt2.push(s.lambdas[1]);
        attributes.margin.push(s.margin);
    }

    let mut faces = Vec::new();
    for j in 0..n2 - 1 {
        for i in 0..n1 - 1 {
            let v00 = compact[grid.index(i, j)];
            let v10 = compact[grid.index(i + 1, j)];
            let v01 = compact[grid.index(i, j + 1)];
            let v11 = compact[grid.index(i + 1, j + 1)];
            let corners = [v00, v10, v01, v11];
            if corners.contains(&usize::MAX) {
                continue;
            }
            // A sign change of the margin means the cell contains a point of
            // the singular set even though no corner is close to it.
            let negative = corners.map(|v| attributes.margin[v] < 0.0);
            if negative.iter().any(|n| *n != negative[0]) {
                continue;
            }
            faces.push([v00, v10, v11]);
            faces.push([v00, v11, v01]);
        }
    }
    if faces.is_empty() {
        return Err(MeshError::EmptyMesh);
    }

    Ok(SurfaceMesh {
        grid,
        vertices,
        projected: proj,
        source,
        mask: compact.iter().map(|c| *c != usize::MAX).collect(),
        faces,
        attributes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::sample_grid;
    use ribaucour_core::{SeedTorus, TorusParams};

    fn seed_field(n1: usize, n2: usize) -> SampledField {
        let g = GridSpec::new([0.0, 1.0], [0.0, 1.0], [n1, n2]).unwrap();
        sample_grid(&SeedTorus(TorusParams::new(0.6).unwrap()), &g, 1e-3).unwrap()
    }

    #[test]
    fn full_grid_triangle_count() {
        let m = tessellate(&seed_field(5, 4), None).unwrap();
        assert_eq!(m.faces.len(), 2 * 4 * 3);
        assert_eq!(m.vertices.len(), 20);
        assert_eq!(m.connected_components(), 1);
        assert_eq!(m.faces[0], [0, 1, 6]);
        assert_eq!(m.faces[1], [0, 6, 5]);
    }

    #[test]
    fn masking_one_vertex_drops_its_cells() {
        let mut f = seed_field(5, 5);
        f.mask[f.grid.index(2, 2)] = Mask::NearSingular;
        let m = tessellate(&f, None).unwrap();
        assert_eq!(m.faces.len(), 2 * 16 - 2 * 4);
        assert_eq!(m.vertices.len(), 24);
        assert!(!m.mask[12]);
        f.mask[f.grid.index(0, 0)] = Mask::NearSingular;
        assert_eq!(tessellate(&f, None).unwrap().faces.len(), 2 * 16 - 2 * 5);
    }

    #[test]
    fn masked_column_splits_the_mesh() {
        let mut f = seed_field(5, 3);
        for j in 0..3 {
            f.mask[f.grid.index(2, j)] = Mask::NearSingular;
        }
        assert_eq!(tessellate(&f, None).unwrap().connected_components(), 2);
    }

    #[test]
    fn margin_sign_change_drops_the_cell() {
        let mut f = seed_field(3, 2);
        f.samples[2].as_mut().unwrap().margin = -0.5;
        f.samples[5].as_mut().unwrap().margin = -0.5;
        let m = tessellate(&f, None).unwrap();
        assert_eq!(m.faces.len(), 2);
        assert_eq!(m.vertices.len(), 6);
    }

    #[test]
    fn all_masked_is_empty() {
        let mut f = seed_field(2, 2);
        f.mask[1] = Mask::NonFinite;
        assert!(matches!(tessellate(&f, None), Err(MeshError::EmptyMesh)));
    }
}
