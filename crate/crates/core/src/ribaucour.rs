//! The Ribaucour transform written against an arbitrary seed frame.
//!
//! Given the seed position `X`, unit normal `N`, principal frame `e1, e2` and
//! scalars `Ω, Ω1, Ω2, W` solving the Ribaucour system, the transformed
//! surface and its normal are
//!
//! ```text
//! X̃ = (1 − 2Ω²/S)·X − (2Ω/S)·(Ω1 e1 + Ω2 e2 − W N)
//! Ñ = N + (2W/S)·(Ω1 e1 + Ω2 e2 − W N + Ω X)
//! ```
//!
//! with `S = Ω1² + Ω2² + W² + Ω²`. These are independent of the torus-specific
//! expansions in [`crate::surface`] and serve as the reference for them.

use crate::scalars::ScalarBundle;
use crate::torus::{TorusFrame, Vec4};

fn tangent_part(frame: &TorusFrame, b: &ScalarBundle) -> Vec4 {
    frame.e1 * b.omega1 + frame.e2 * b.omega2 - frame.n * b.w
}

pub fn transform_point(frame: &TorusFrame, b: &ScalarBundle) -> Vec4 {
    let s = b.s_from_sum();
    frame.x * (1.0 - 2.0 * b.omega * b.omega / s) - tangent_part(frame, b) * (2.0 * b.omega / s)
}

pub fn transform_normal(frame: &TorusFrame, b: &ScalarBundle) -> Vec4 {
    let s = b.s_from_sum();
    frame.n + (tangent_part(frame, b) + frame.x * b.omega) * (2.0 * b.w / s)
}

/// `λ̃ = (W·T + λ·S)/(S − Ω·T)` exactly as written, without simplification.
pub fn transformed_lambda(lambda: f64, b: &ScalarBundle, t: f64) -> f64 {
    (b.w * t + lambda * b.s) / (b.s - b.omega * t)
}

/// `(S − Ω·T)/S`; the transformed metric is this factor squared times the seed's.
pub fn metric_factor(b: &ScalarBundle, t: f64) -> f64 {
    (b.s - b.omega * t) / b.s
}
