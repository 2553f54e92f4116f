//! Stereographic projection of S³ minus the pole `(0, 0, 0, 1)` into R³.

use ribaucour_core::{rotation_rtp, Vec4};
use serde::Serialize;

use crate::error::{MeshError, Result};
use crate::grid::{Mask, SampledField};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProjectionKind {
    /// Keep the raw 4-D points.
    None,
    Stereographic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProjectionSpec {
    pub kind: ProjectionKind,
    /// `(θ, φ)` of the rotation applied before projecting.
    pub pre_rotation: (f64, f64),
    pub pole_tolerance: f64,
}

impl ProjectionSpec {
    pub const DEFAULT_POLE_TOLERANCE: f64 = 1e-6;

    pub fn new(kind: ProjectionKind, pre_rotation: (f64, f64), pole_tolerance: f64) -> Result<Self> {
        if !(pole_tolerance > 0.0 && pole_tolerance.is_finite()) {
            return Err(MeshError::InvalidPoleTolerance(pole_tolerance));
        }
        Ok(ProjectionSpec {
            kind,
            pre_rotation,
            pole_tolerance,
        })
    }

    pub fn stereographic() -> Self {
        ProjectionSpec {
            kind: ProjectionKind::Stereographic,
            pre_rotation: (0.0, 0.0),
            pole_tolerance: Self::DEFAULT_POLE_TOLERANCE,
        }
    }

    pub fn none() -> Self {
        ProjectionSpec {
            kind: ProjectionKind::None,
            ..Self::stereographic()
        }
    }
}

/// `(x1, x2, x3)/(1 − x4)` after the pre-rotation.
pub fn project_stereographic(p: &Vec4, spec: &ProjectionSpec) -> Result<[f64; 3]> {
    let q = rotation_rtp(spec.pre_rotation.0, spec.pre_rotation.1, p);
    let gap = 1.0 - q[3];
    if gap.is_nan() || gap < spec.pole_tolerance {
        return Err(MeshError::NearPole { gap });
    }
    Ok([q[0] / gap, q[1] / gap, q[2] / gap])
}

/// Projects every unmasked vertex, masking those that land near the pole or
/// map to non-finite coordinates. `None` for the identity projection.
pub fn project_field(field: &mut SampledField, spec: &ProjectionSpec) -> Option<Vec<[f64; 3]>> {
    if spec.kind == ProjectionKind::None {
        return None;
    }
    let mut out = vec![[0.0; 3]; field.samples.len()];
    for (k, s) in field.samples.iter().enumerate() {
        let Some(s) = s else { continue };
        if field.mask[k] != Mask::Regular {
            continue;
        }
        match project_stereographic(&Vec4::from(s.x), spec) {
            Ok(v) if v.iter().all(|c| c.is_finite()) => out[k] = v,
            Ok(_) => field.mask[k] = Mask::NonFinite,
            Err(_) => field.mask[k] = Mask::NearPole,
        }
    }
    Some(out)
}
