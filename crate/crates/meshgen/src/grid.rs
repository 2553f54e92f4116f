//! Lattice sampling of a surface with masking of the near-singular set.

use rayon::prelude::*;
use ribaucour_core::{CoreError, CurvatureLineSurface, ParamPoint};
use serde::Serialize;

use crate::error::{MeshError, Result};

pub const DEFAULT_VERTEX_CAP: usize = 4_000_000;
pub const DEFAULT_MASK_THRESHOLD: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub u1: [f64; 2],
    pub u2: [f64; 2],
    pub n: [usize; 2],
}

impl GridSpec {
    pub fn new(u1: [f64; 2], u2: [f64; 2], n: [usize; 2]) -> Result<Self> {
        Self::with_cap(u1, u2, n, DEFAULT_VERTEX_CAP)
    }

    pub fn with_cap(u1: [f64; 2], u2: [f64; 2], n: [usize; 2], cap: usize) -> Result<Self> {
        for (name, r) in [("u1", u1), ("u2", u2)] {
            if !(r[0].is_finite() && r[1].is_finite() && r[1] > r[0]) {
                return Err(MeshError::InvalidGrid(format!("{name} range [{}, {}] is empty", r[0], r[1])));
            }
        }
        if n[0] < 2 || n[1] < 2 {
            return Err(MeshError::InvalidGrid(format!("need at least 2 vertices per axis, got {}x{}", n[0], n[1])));
        }
        if n[0].checked_mul(n[1]).is_none_or(|t| t > cap) {
            return Err(MeshError::GridTooLarge { n1: n[0], n2: n[1], cap });
        }
        Ok(GridSpec { u1, u2, n })
    }

    pub fn len(&self) -> usize {
        self.n[0] * self.n[1]
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Row-major lattice index, rows along `u1`.
    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.n[0] + i
    }

    fn coord(range: [f64; 2], n: usize, i: usize) -> f64 {
        if i + 1 == n {
            range[1]
        } else {
            range[0] + (range[1] - range[0]) * i as f64 / (n - 1) as f64
        }
    }

    pub fn point(&self, i: usize, j: usize) -> ParamPoint {
        ParamPoint::new(Self::coord(self.u1, self.n[0], i), Self::coord(self.u2, self.n[1], j))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mask {
    Regular,
    NearSingular,
    NonFinite,
    Overflow,
    NearPole,
}

/// Geometric data kept per lattice vertex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VertexSample {
    pub x: [f64; 4],
    pub psi: [f64; 2],
    pub lambdas: [f64; 2],
    pub margin: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct MaskTally {
    pub near_singular: usize,
    pub non_finite: usize,
    pub overflow: usize,
    pub near_pole: usize,
}

impl MaskTally {
    pub fn total(&self) -> usize {
        self.near_singular + self.non_finite + self.overflow + self.near_pole
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampledField {
    pub grid: GridSpec,
    pub mask_threshold: f64,
    pub samples: Vec<Option<VertexSample>>,
    pub mask: Vec<Mask>,
}

impl SampledField {
    pub fn tally(&self) -> MaskTally {
        let mut t = MaskTally::default();
        for m in &self.mask {
            match m {
                Mask::Regular => {}
                Mask::NearSingular => t.near_singular += 1,
                Mask::NonFinite => t.non_finite += 1,
                Mask::Overflow => t.overflow += 1,
                Mask::NearPole => t.near_pole += 1,
            }
        }
        t
    }

    pub fn regular_count(&self) -> usize {
        self.mask.iter().filter(|m| **m == Mask::Regular).count()
    }

    pub fn masked_fraction(&self) -> f64 {
        1.0 - self.regular_count() as f64 / self.mask.len() as f64
    }

    pub fn is_regular(&self, k: usize) -> bool {
        self.mask[k] == Mask::Regular
    }

    /// Smallest `|margin|` over unmasked vertices.
    pub fn min_abs_margin(&self) -> Option<f64> {
        self.samples
            .iter()
            .zip(&self.mask)
            .filter(|(_, m)| **m == Mask::Regular)
            .filter_map(|(s, _)| s.map(|s| s.margin.abs()))
            .reduce(f64::min)
    }
}

fn sample_vertex(surface: &dyn CurvatureLineSurface, u: ParamPoint, threshold: f64) -> (Option<VertexSample>, Mask) {
    let classify = |e: CoreError| match e {
        CoreError::Overflow { .. } => Mask::Overflow,
        CoreError::SingularPoint { .. } => Mask::NearSingular,
        _ => Mask::NonFinite,
    };
    let margin = match surface.margin(u) {
        Ok(m) if m.is_finite() => m,
        Ok(_) => return (None, Mask::NonFinite),
        Err(e) => return (None, classify(e)),
    };
    if margin.abs() < threshold {
        return (None, Mask::NearSingular);
    }
    let eval = || -> ribaucour_core::Result<VertexSample> {
        let x = surface.position(u)?;
        Ok(VertexSample {
            x: [x[0], x[1], x[2], x[3]],
            psi: surface.metric(u)?,
            lambdas: surface.lambdas(u)?,
            margin,
        })
    };
    match eval() {
        Ok(s) if s.x.iter().chain(&s.psi).chain(&s.lambdas).all(|v| v.is_finite()) => (Some(s), Mask::Regular),
        Ok(_) => (None, Mask::NonFinite),
        Err(e) => (None, classify(e)),
    }
}

/// Evaluates the surface at every lattice vertex, rows in parallel. Vertices
/// with `|margin| < mask_threshold`, failed or non-finite evaluations are
/// masked. The result does not depend on the thread count.
pub fn sample_grid(surface: &dyn CurvatureLineSurface, grid: &GridSpec, mask_threshold: f64) -> Result<SampledField> {
    if !(mask_threshold >= 0.0 && mask_threshold.is_finite()) {
        return Err(MeshError::InvalidThreshold(mask_threshold));
    }
    let [n1, n2] = grid.n;
    let rows: Vec<Vec<(Option<VertexSample>, Mask)>> = (0..n2)
        .into_par_iter()
        .map(|j| (0..n1).map(|i| sample_vertex(surface, grid.point(i, j), mask_threshold)).collect())
        .collect();
    let (samples, mask) = rows.into_iter().flatten().unzip();
    Ok(SampledField {
        grid: *grid,
        mask_threshold,
        samples,
        mask,
    })
}
