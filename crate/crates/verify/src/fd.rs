//! Central differences over the curvature-line parameters.

use std::ops::{Mul, Sub};

use ribaucour_core::{CoreError, CurvatureLineSurface, ParamPoint, REGULARITY_TOLERANCE};
use serde::Serialize;

use crate::error::{Result, VerifyError};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FDConfig {
    step: f64,
    richardson: bool,
}

impl FDConfig {
    pub const DEFAULT_STEP: f64 = 1e-5;

    pub fn new(step: f64, richardson: bool) -> Result<Self> {
        if !(step > 1e-9 && step < 1e-2) {
            return Err(VerifyError::InvalidStep(step));
        }
        Ok(FDConfig { step, richardson })
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn richardson(&self) -> bool {
        self.richardson
    }

    /// Step for the outer difference of a nested second derivative. The inner
    /// difference carries roundoff of order `ε/step`, which the outer one
    /// divides by its own step again.
    pub fn outer(&self) -> FDConfig {
        FDConfig {
            step: (self.step * 100.0).min(1e-2),
            richardson: self.richardson,
        }
    }
}

impl Default for FDConfig {
    fn default() -> Self {
        FDConfig {
            step: Self::DEFAULT_STEP,
            richardson: true,
        }
    }
}

/// Values that can be differenced: scalars and 4-vectors.
pub trait FdValue: Copy + Sub<Output = Self> + Mul<f64, Output = Self> {}

impl<T: Copy + Sub<Output = T> + Mul<f64, Output = T>> FdValue for T {}

/// Derivative of `field` along `axis` (0 for `u1`, 1 for `u2`).
///
/// `(f(u+h) − f(u−h))/2h`, or with Richardson `(4D(h/2) − D(h))/3`. When a
/// `guard` surface is given, every stencil point must have a singularity
/// margin of the same sign as the centre and above the regularity bound;
/// otherwise the stencil would straddle the singular set and the difference is
/// meaningless.
pub fn central_diff<T: FdValue>(
    field: impl Fn(ParamPoint) -> Result<T>,
    guard: Option<&dyn CurvatureLineSurface>,
    u: ParamPoint,
    axis: usize,
    fd: &FDConfig,
) -> Result<T> {
    let hit = || VerifyError::StencilHitsSingularity { u1: u.u1, u2: u.u2, axis };
    let h = fd.step;
    let steps: &[f64] = if fd.richardson { &[h, 0.5 * h] } else { &[h] };

    if let Some(surface) = guard {
        let m0 = surface.margin(u)?;
        if m0.abs() <= REGULARITY_TOLERANCE {
            return Err(hit());
        }
        for &s in steps {
            for d in [s, -s] {
                let m = surface.margin(u.offset(axis, d))?;
                if m.abs() <= REGULARITY_TOLERANCE || m.signum() != m0.signum() {
                    return Err(hit());
                }
            }
        }
    }

    let eval = |v: ParamPoint| match field(v) {
        Err(VerifyError::Core(CoreError::SingularPoint { .. })) => Err(hit()),
        other => other,
    };
    let plain = |s: f64| -> Result<T> {
        let plus = eval(u.offset(axis, s))?;
        let minus = eval(u.offset(axis, -s))?;
        Ok((plus - minus) * (0.5 / s))
    };
    let coarse = plain(h)?;
    if !fd.richardson {
        return Ok(coarse);
    }
    let fine = plain(0.5 * h)?;
    Ok(fine * (4.0 / 3.0) - coarse * (1.0 / 3.0))
}
