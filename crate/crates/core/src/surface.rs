//! Closed-form evaluation of the transformed flat surfaces.

use crate::error::{CoreError, Result};
use crate::generators::{eval_generators, eval_scaled, GeneratorValues};
use crate::params::{validate_config, GeneratorConfig, TorusParams, ValidatedConfig};
use crate::ribaucour;
use crate::scalars::{eval_scalars, ScalarBundle};
use crate::torus::{torus_frame, torus_point, ParamPoint, TorusFrame, Vec4};

/// A point is regular when `|margin|` exceeds this.
pub const REGULARITY_TOLERANCE: f64 = 1e-9;

/// Surfaces parametrised by curvature lines with a diagonal metric
/// `ψ1² du1² + ψ2² du2²`.
pub trait CurvatureLineSurface: Sync {
    fn params(&self) -> TorusParams;

    fn position(&self, u: ParamPoint) -> Result<Vec4>;

    fn normal(&self, u: ParamPoint) -> Result<Vec4>;

    /// Signed metric coefficients `(ψ1, ψ2)`.
    fn metric(&self, u: ParamPoint) -> Result<[f64; 2]>;

    /// Eigenvalues `λ̃i` of `dÑ` on the coordinate directions, so that
    /// `Ñ,i = λ̃i·X̃,i`.
    fn lambdas(&self, u: ParamPoint) -> Result<[f64; 2]>;

    /// Dimensionless regularity indicator; zero on the singular set.
    fn margin(&self, u: ParamPoint) -> Result<f64>;
}

/// The seed torus itself, viewed as the trivial member of the family.
#[derive(Debug, Clone, Copy)]
pub struct SeedTorus(pub TorusParams);

impl CurvatureLineSurface for SeedTorus {
    fn params(&self) -> TorusParams {
        self.0
    }

    fn position(&self, u: ParamPoint) -> Result<Vec4> {
        Ok(torus_point(&self.0, u))
    }

    fn normal(&self, u: ParamPoint) -> Result<Vec4> {
        Ok(torus_frame(&self.0, u).n)
    }

    fn metric(&self, _u: ParamPoint) -> Result<[f64; 2]> {
        Ok([self.0.lame(); 2])
    }

    fn lambdas(&self, _u: ParamPoint) -> Result<[f64; 2]> {
        Ok(self.0.lambdas())
    }

    fn margin(&self, _u: ParamPoint) -> Result<f64> {
        Ok(1.0)
    }
}

/// Numerators of `ψ1, ψ2` (up to `r1 r2`) and their common denominator
/// `D = r1²g² + r2²f² = Ω² + W²`.
#[derive(Debug, Clone, Copy)]
struct MetricFactors {
    q1: f64,
    q2: f64,
    d: f64,
}

impl MetricFactors {
    fn new(params: &TorusParams, v: &GeneratorValues) -> Self {
        let (r1s, r2s) = (params.r1() * params.r1(), params.r2() * params.r2());
        let (f, g) = (v.f, v.g);
        MetricFactors {
            q1: -r2s * f * f + r1s * g * g - 2.0 * r2s * f * g,
            q2: r2s * f * f - r1s * g * g - 2.0 * r1s * f * g,
            d: r1s * g * g + r2s * f * f,
        }
    }

    fn margin(&self) -> f64 {
        (self.q1 / self.d) * (self.q2 / self.d)
    }
}

/// Full geometric state at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalRecord {
    pub point: ParamPoint,
    pub frame: TorusFrame,
    pub scalars: ScalarBundle,
    pub xt: Vec4,
    pub nt: Vec4,
    pub psi: [f64; 2],
    /// `λ̃1, λ̃2`; `None` at singular points.
    pub lambdas: Option<[f64; 2]>,
    pub margin: f64,
    pub regular: bool,
}

/// Ribaucour transform of the flat torus for one validated configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RibaucourSurface {
    cfg: ValidatedConfig,
}

impl RibaucourSurface {
    pub fn new(params: TorusParams, cfg: GeneratorConfig) -> Result<Self> {
        Ok(Self {
            cfg: validate_config(params, cfg)?,
        })
    }

    pub fn from_validated(cfg: ValidatedConfig) -> Self {
        Self { cfg }
    }

    pub fn config(&self) -> &ValidatedConfig {
        &self.cfg
    }

    pub fn generators(&self, u: ParamPoint) -> Result<GeneratorValues> {
        eval_generators(&self.cfg, u)
    }

    /// Unscaled scalars; may overflow for large arguments.
    pub fn scalars(&self, u: ParamPoint) -> Result<ScalarBundle> {
        eval_scalars(&self.cfg, u)
    }

    /// Scalars computed from generators sharing a common positive factor.
    /// Everything downstream of this is homogeneous of degree zero.
    fn normalized(&self, u: ParamPoint) -> Result<(GeneratorValues, ScalarBundle)> {
        let v = eval_scaled(&self.cfg, u)?;
        let b = ScalarBundle::from_generators(&self.cfg.params, self.cfg.c, v);
        if b.s == 0.0 || !b.s.is_finite() {
            return Err(CoreError::DegeneratePoint { u1: u.u1, u2: u.u2 });
        }
        Ok((v, b))
    }

    fn factors(&self, u: ParamPoint) -> Result<MetricFactors> {
        let (v, _) = self.normalized(u)?;
        Ok(MetricFactors::new(&self.cfg.params, &v))
    }

    /// `Q1·Q2/D²`, which equals `ψ1ψ2/(r1 r2)²`.
    pub fn singularity_margin(&self, u: ParamPoint) -> Result<f64> {
        Ok(self.factors(u)?.margin())
    }

    pub fn is_regular(&self, u: ParamPoint) -> Result<bool> {
        Ok(self.singularity_margin(u)?.abs() > REGULARITY_TOLERANCE)
    }

    fn require_regular(&self, u: ParamPoint, m: &MetricFactors) -> Result<()> {
        let margin = m.margin();
        if margin.abs() > REGULARITY_TOLERANCE {
            Ok(())
        } else {
            Err(CoreError::SingularPoint {
                u1: u.u1,
                u2: u.u2,
                margin,
            })
        }
    }

    fn point_from(&self, u: ParamPoint, b: &ScalarBundle) -> Vec4 {
        let p = &self.cfg.params;
        let (r1, r2) = (p.r1(), p.r2());
        let (om, w, s) = (b.omega, b.w, b.s);
        let (s1, c1) = (r2 * u.u1).sin_cos();
        let (s2, c2) = (r1 * u.u2).sin_cos();
        let first = r1 * s - 2.0 * r1 * om * om - 2.0 * r2 * om * w;
        let second = r2 * s - 2.0 * r2 * om * om + 2.0 * r1 * om * w;
        let (tf, tg) = (2.0 * b.fp * om, 2.0 * b.gp * om);
        Vec4::new(
            first * c1 + tf * s1,
            first * s1 - tf * c1,
            second * c2 + tg * s2,
            second * s2 - tg * c2,
        ) / s
    }

    /// `X̃` from its componentwise expansion over the torus angles.
    pub fn transformed_point(&self, u: ParamPoint) -> Result<Vec4> {
        let (v, b) = self.normalized(u)?;
        self.require_regular(u, &MetricFactors::new(&self.cfg.params, &v))?;
        Ok(self.point_from(u, &b))
    }

    /// `Ñ` from the frame form of the transform.
    pub fn transformed_normal(&self, u: ParamPoint) -> Result<Vec4> {
        let (v, b) = self.normalized(u)?;
        self.require_regular(u, &MetricFactors::new(&self.cfg.params, &v))?;
        Ok(ribaucour::transform_normal(&torus_frame(&self.cfg.params, u), &b))
    }

    /// Signed `(ψ1, ψ2)`; zero on the singular set.
    pub fn metric_coefficients(&self, u: ParamPoint) -> Result<[f64; 2]> {
        let m = self.factors(u)?;
        let a = self.cfg.params.lame();
        Ok([a * m.q1 / m.d, a * m.q2 / m.d])
    }

    /// `λ̃i = (W·Ti + λi·S)/(S − Ω·Ti)`, reduced to
    /// `λ̃1 = (r2/r1)·Q2/Q1` and `λ̃2 = −(r1/r2)·Q1/Q2`.
    pub fn principal_curvatures(&self, u: ParamPoint) -> Result<[f64; 2]> {
        let m = self.factors(u)?;
        self.require_regular(u, &m)?;
        Ok(self.lambdas_from(&m))
    }

    fn lambdas_from(&self, m: &MetricFactors) -> [f64; 2] {
        let ratio = self.cfg.params.r2() / self.cfg.params.r1();
        [ratio * m.q2 / m.q1, -(m.q1 / m.q2) / ratio]
    }

    /// Principal curvatures `κ̃i = −λ̃i`, i.e. `κ̃1 = −r2ψ2/(r1ψ1)`,
    /// `κ̃2 = r1ψ1/(r2ψ2)`.
    pub fn kappas(&self, u: ParamPoint) -> Result<[f64; 2]> {
        let [l1, l2] = self.principal_curvatures(u)?;
        Ok([-l1, -l2])
    }

    /// Contact point `cos θ·X + sin θ·N` of the sphere congruence, with
    /// `θ = atan2(Ω, W)`; coincides with `cos θ·X̃ + sin θ·Ñ`.
    pub fn sphere_congruence_point(&self, u: ParamPoint) -> Result<Vec4> {
        let (_, b) = self.normalized(u)?;
        let fr = torus_frame(&self.cfg.params, u);
        let (st, ct) = b.theta.sin_cos();
        Ok(fr.x * ct + fr.n * st)
    }

    pub fn evaluate(&self, u: ParamPoint) -> Result<EvalRecord> {
        let scalars = self.scalars(u)?;
        let (v, b) = self.normalized(u)?;
        let m = MetricFactors::new(&self.cfg.params, &v);
        let frame = torus_frame(&self.cfg.params, u);
        let margin = m.margin();
        let regular = margin.abs() > REGULARITY_TOLERANCE;
        let a = self.cfg.params.lame();
        Ok(EvalRecord {
            point: u,
            frame,
            scalars,
            xt: self.point_from(u, &b),
            nt: ribaucour::transform_normal(&frame, &b),
            psi: [a * m.q1 / m.d, a * m.q2 / m.d],
            lambdas: regular.then(|| self.lambdas_from(&m)),
            margin,
            regular,
        })
    }
}

impl CurvatureLineSurface for RibaucourSurface {
    fn params(&self) -> TorusParams {
        self.cfg.params
    }

    fn position(&self, u: ParamPoint) -> Result<Vec4> {
        self.transformed_point(u)
    }

    fn normal(&self, u: ParamPoint) -> Result<Vec4> {
        self.transformed_normal(u)
    }

    fn metric(&self, u: ParamPoint) -> Result<[f64; 2]> {
        self.metric_coefficients(u)
    }

    fn lambdas(&self, u: ParamPoint) -> Result<[f64; 2]> {
        self.principal_curvatures(u)
    }

    fn margin(&self, u: ParamPoint) -> Result<f64> {
        self.singularity_margin(u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{Family, Sign};

    fn fig1() -> RibaucourSurface {
        RibaucourSurface::new(TorusParams::new(0.6).unwrap(), GeneratorConfig::new(4.0, Family::CoshSinh)).unwrap()
    }

    fn close(a: &Vec4, b: [f64; 4], tol: f64) -> bool {
        (0..4).all(|i| (a[i] - b[i]).abs() <= tol)
    }

    #[test]
    fn anchor_point_and_normal() {
        let s = fig1();
        let o = ParamPoint::ORIGIN;
        let xt = s.transformed_point(o).unwrap();
        assert!(close(&xt, [0.36, 0.0, 0.8, -0.48], 1e-15), "{xt:?}");
        let nt = s.transformed_normal(o).unwrap();
        assert!(close(&nt, [-0.48, 0.0, 0.6, 0.64], 1e-15), "{nt:?}");
    }

    #[test]
    fn anchor_metric_curvatures_margin() {
        let s = fig1();
        let o = ParamPoint::ORIGIN;
        let [p1, p2] = s.metric_coefficients(o).unwrap();
        assert!((p1 + 0.48).abs() < 1e-15 && (p2 - 0.48).abs() < 1e-15);
        let [l1, l2] = s.principal_curvatures(o).unwrap();
        assert!((l1 + 4.0 / 3.0).abs() < 1e-15 && (l2 - 0.75).abs() < 1e-15);
        let [k1, k2] = s.kappas(o).unwrap();
        assert!((k1 - 4.0 / 3.0).abs() < 1e-15 && (k2 + 0.75).abs() < 1e-15);
        assert!((s.singularity_margin(o).unwrap() + 1.0).abs() < 1e-15);
        let c = s.sphere_congruence_point(o).unwrap();
        assert!(close(&c, [0.0, 0.0, 1.0, 0.0], 1e-15), "{c:?}");
    }

    #[test]
    fn singular_root_on_the_u2_axis() {
        let s = fig1();
        // g = 4 solves the first factor with f = 1: (4/3)·sinh(1.2·u2) = 4.
        let root = 3f64.asinh() / 1.2;
        assert!((root - 1.515372).abs() < 1e-6);
        let m = s.singularity_margin(ParamPoint::new(0.0, root)).unwrap();
        assert!(m.abs() < 1e-14, "{m}");
        let err = s.transformed_point(ParamPoint::new(0.0, root)).unwrap_err();
        assert!(matches!(err, CoreError::SingularPoint { .. }));
        let below = s.singularity_margin(ParamPoint::new(0.0, root - 1e-3)).unwrap();
        let above = s.singularity_margin(ParamPoint::new(0.0, root + 1e-3)).unwrap();
        assert!(below * above < 0.0);
    }

    #[test]
    fn boundary_line_metric_is_exact() {
        let s = fig1();
        let [p1, p2] = s.metric_coefficients(ParamPoint::new(20.0, 0.0)).unwrap();
        // With g = 0 the coefficients collapse to ∓r1·r2.
        assert!((p1 + 0.48).abs() < 1e-15);
        assert!((p2 - 0.48).abs() < 1e-15);
        let m = s.singularity_margin(ParamPoint::new(20.0, 0.3)).unwrap();
        assert!((m + 1.0).abs() < 1e-6, "{m}");
    }

    #[test]
    fn congruence_point_on_w_zero() {
        // Family ii: W = r2²f − r1²g vanishes where sinh(1.6 u1) = cosh(1.2 u2)·(0.36/0.64)·(4/3).
        let s =
            RibaucourSurface::new(TorusParams::new(0.6).unwrap(), GeneratorConfig::new(4.0, Family::SinhCosh)).unwrap();
        let u1 = (0.36 / 0.64 * 4.0 / 3.0f64).asinh() / 1.6;
        let u = ParamPoint::new(u1, 0.0);
        let b = s.scalars(u).unwrap();
        assert!(b.w.abs() < 1e-15, "{}", b.w);
        let c = s.sphere_congruence_point(u).unwrap();
        let n = torus_frame(&TorusParams::new(0.6).unwrap(), u).n;
        assert!((c - n).amax() < 1e-15);
    }

    #[test]
    fn large_arguments_stay_finite() {
        let s = RibaucourSurface::new(
            TorusParams::new(0.6).unwrap(),
            GeneratorConfig::new(
                4.0,
                Family::Exp {
                    a1: 1.0,
                    b1: 2.0,
                    eps1: Sign::Plus,
                    eps2: Sign::Minus,
                },
            ),
        )
        .unwrap();
        let u = ParamPoint::new(900.0, -700.0);
        let xt = s.transformed_point(u).unwrap();
        assert!((xt.norm() - 1.0).abs() < 1e-14);
        assert!(s.evaluate(u).is_err());
    }

    #[test]
    fn evaluate_matches_individual_operations() {
        let s = fig1();
        let u = ParamPoint::new(0.4, -0.1);
        let r = s.evaluate(u).unwrap();
        assert!(r.regular);
        assert_eq!(r.xt, s.transformed_point(u).unwrap());
        assert_eq!(r.nt, s.transformed_normal(u).unwrap());
        assert_eq!(r.psi, s.metric_coefficients(u).unwrap());
        assert_eq!(r.lambdas.unwrap(), s.principal_curvatures(u).unwrap());
        assert_eq!(r.margin, s.singularity_margin(u).unwrap());
    }
}
