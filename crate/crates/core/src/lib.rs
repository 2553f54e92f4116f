//! Ribaucour transforms of the flat torus in the unit 3-sphere.
//!
//! The seed is the product torus
//! `X(u) = (r1 cos r2u1, r1 sin r2u1, r2 cos r1u2, r2 sin r1u2)` with
//! `r1² + r2² = 1`. Each generator pair `(f, g)` solving
//! `f'' = c r2² f`, `g'' = c r1² g` yields a flat surface `X̃` parametrised by
//! curvature lines, together with its normal, metric and principal
//! curvatures, all in closed form.
//!
//! ```
//! use ribaucour_core::{Family, GeneratorConfig, ParamPoint, RibaucourSurface, TorusParams};
//!
//! let torus = TorusParams::new(0.6).unwrap();
//! let surface = RibaucourSurface::new(torus, GeneratorConfig::new(4.0, Family::CoshSinh)).unwrap();
//! let x = surface.transformed_point(ParamPoint::ORIGIN).unwrap();
//! assert!((x.norm() - 1.0).abs() < 1e-15);
//! ```

pub mod congruence;
pub mod errata;
mod error;
pub mod generators;
pub mod params;
pub mod ribaucour;
pub mod scalars;
pub mod surface;
pub mod torus;

pub use congruence::{canonical_form, congruence_shift_check, Congruence};
pub use error::{CoreError, Result};
pub use generators::{eval_generators, GeneratorValues};
pub use params::{validate_config, Family, GeneratorConfig, Reduction, Sign, TorusParams, ValidatedConfig};
pub use scalars::{eval_scalars, ScalarBundle};
pub use surface::{CurvatureLineSurface, EvalRecord, RibaucourSurface, SeedTorus, REGULARITY_TOLERANCE};
pub use torus::{rotation_rtp, torus_frame, torus_point, ParamPoint, TorusFrame, Vec4};
