//! Closed-form expansions in the form they are usually quoted, which disagree
//! with the frame form of the transform. They are not used for evaluation;
//! the tests pin exactly how they fail.

use crate::error::Result;
use crate::surface::RibaucourSurface;
use crate::torus::{ParamPoint, Vec4};

/// Componentwise `Ñ` expansion with `−2r2W²` / `+2r1W²` in the radial terms
/// and `f'Ω`, `g'Ω` in the angular terms. The frame form gives `+2r2W²`,
/// `−2r1W²` and `f'W`, `g'W`; this version is not a unit vector.
pub fn quoted_normal_expansion(surface: &RibaucourSurface, u: ParamPoint) -> Result<Vec4> {
    let p = surface.config().params();
    let (r1, r2) = (p.r1(), p.r2());
    let b = surface.scalars(u)?;
    let (om, w, s) = (b.omega, b.w, b.s);
    let (s1, c1) = (r2 * u.u1).sin_cos();
    let (s2, c2) = (r1 * u.u2).sin_cos();
    let first = -r2 * s - 2.0 * r2 * w * w + 2.0 * r1 * om * w;
    let second = r1 * s + 2.0 * r1 * w * w - 2.0 * r2 * om * w;
    let (tf, tg) = (2.0 * b.fp * om, 2.0 * b.gp * om);
    Ok(Vec4::new(
        first * c1 + tf * s1,
        first * s1 - tf * c1,
        second * c2 + tg * s2,
        second * s2 - tg * c2,
    ) / s)
}

/// The two factors of the excluded set in their quoted form,
/// `(r1²g² − r2²f² − 2r2²fg, r2²f² − r1²g² + 2r1²fg)`. The second differs
/// from the numerator of `ψ2` (`… − 2r1²fg`) in the sign of its cross term.
pub fn quoted_domain_factors(surface: &RibaucourSurface, u: ParamPoint) -> Result<[f64; 2]> {
    let p = surface.config().params();
    let (r1s, r2s) = (p.r1() * p.r1(), p.r2() * p.r2());
    let v = surface.generators(u)?;
    let (f, g) = (v.f, v.g);
    Ok([
        r1s * g * g - r2s * f * f - 2.0 * r2s * f * g,
        r2s * f * f - r1s * g * g + 2.0 * r1s * f * g,
    ])
}
