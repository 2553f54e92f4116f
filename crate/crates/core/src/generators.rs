//! Evaluation of the generator pair `f(u1)`, `g(u2)` and their derivatives.
//!
//! Every family is a solution of `f'' = c·r2²·f`, `g'' = c·r1²·g`, stored as
//! `A·cosh + B·sinh`. Internally each generator is evaluated as
//! `p·eˣ + q·e⁻ˣ`, which lets the geometry pull out a common factor
//! `e^{-max(|x|, |y|)}` and stay finite for any finite parameter point.

use crate::error::{CoreError, Result};
use crate::params::{HypCoeffs, ValidatedConfig};
use crate::torus::ParamPoint;

/// Largest hyperbolic argument whose unscaled exponential is finite.
const MAX_EXP_ARG: f64 = 709.0;

/// `(f, g, f', g')` at one point, all multiplied by the same positive factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorValues {
    pub f: f64,
    pub g: f64,
    pub fp: f64,
    pub gp: f64,
}

impl GeneratorValues {
    pub fn is_finite(&self) -> bool {
        self.f.is_finite() && self.g.is_finite() && self.fp.is_finite() && self.gp.is_finite()
    }
}

/// Value and unit-rate derivative of `(A·cosh x + B·sinh x)·e^{-shift}`.
fn hyperbolic(c: HypCoeffs, x: f64, shift: f64) -> (f64, f64) {
    let p = 0.5 * (c.cosh + c.sinh);
    let q = 0.5 * (c.cosh - c.sinh);
    if p * q < 0.0 && x.abs() < 1.0 {
        // Opposite-signed exponentials cancel near the origin; the
        // hyperbolic form keeps full relative accuracy there.
        let (ch, sh) = (x.cosh(), x.sinh());
        let scale = (-shift).exp();
        (
            (c.cosh * ch + c.sinh * sh) * scale,
            (c.cosh * sh + c.sinh * ch) * scale,
        )
    } else {
        let ep = if p == 0.0 { 0.0 } else { p * (x - shift).exp() };
        let em = if q == 0.0 { 0.0 } else { q * (-x - shift).exp() };
        (ep + em, ep - em)
    }
}

fn arguments(cfg: &ValidatedConfig, u: ParamPoint) -> (f64, f64) {
    let [k1, k2] = cfg.rates();
    (k1 * u.u1, k2 * u.u2)
}

fn evaluate(cfg: &ValidatedConfig, u: ParamPoint, shift: f64) -> GeneratorValues {
    let [k1, k2] = cfg.rates();
    let (x, y) = arguments(cfg, u);
    let (f, df) = hyperbolic(cfg.f, x, shift);
    let (g, dg) = hyperbolic(cfg.g, y, shift);
    GeneratorValues {
        f,
        g,
        fp: k1 * df,
        gp: k2 * dg,
    }
}

/// Unscaled `(f, g, f', g')`; derivatives are analytic.
pub fn eval_generators(cfg: &ValidatedConfig, u: ParamPoint) -> Result<GeneratorValues> {
    if !u.is_finite() {
        return Err(CoreError::NonFinitePoint { u1: u.u1, u2: u.u2 });
    }
    let (x, y) = arguments(cfg, u);
    let overflow = CoreError::Overflow { u1: u.u1, u2: u.u2 };
    if x.abs() > MAX_EXP_ARG || y.abs() > MAX_EXP_ARG {
        return Err(overflow);
    }
    let v = evaluate(cfg, u, 0.0);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(overflow)
    }
}

/// `(f, g, f', g')·e^{-L}` with `L = max(|x|, |y|)` once the arguments grow
/// large; every quantity built from ratios of these is unaffected.
pub(crate) fn eval_scaled(cfg: &ValidatedConfig, u: ParamPoint) -> Result<GeneratorValues> {
    if !u.is_finite() {
        return Err(CoreError::NonFinitePoint { u1: u.u1, u2: u.u2 });
    }
    let (x, y) = arguments(cfg, u);
    let largest = x.abs().max(y.abs());
    let shift = if largest > 30.0 { largest } else { 0.0 };
    Ok(evaluate(cfg, u, shift))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{validate_config, Family, GeneratorConfig, Sign, TorusParams};

    fn cfg(c: f64, family: Family) -> ValidatedConfig {
        validate_config(TorusParams::new(0.6).unwrap(), GeneratorConfig::new(c, family)).unwrap()
    }

    fn exp_fig4() -> ValidatedConfig {
        cfg(
            1e-3,
            Family::Exp {
                a1: 1.0,
                b1: 1.0,
                eps1: Sign::Plus,
                eps2: Sign::Plus,
            },
        )
    }

    #[test]
    fn fig1_generators_at_origin() {
        let v = eval_generators(&cfg(4.0, Family::CoshSinh), ParamPoint::ORIGIN).unwrap();
        assert_eq!(v.f, 1.0);
        assert_eq!(v.g, 0.0);
        assert_eq!(v.fp, 0.0);
        assert!((v.gp - 1.6).abs() < 1e-15);
    }

    #[test]
    fn fig4_generators_at_origin() {
        let v = eval_generators(&exp_fig4(), ParamPoint::ORIGIN).unwrap();
        assert_eq!((v.f, v.g), (1.0, 1.0));
        assert!((v.fp - 0.8 * 1e-3f64.sqrt()).abs() < 1e-16);
        assert!((v.fp - 0.02529822).abs() < 1e-8);
        assert!((v.gp - 0.01897367).abs() < 1e-8);
    }

    #[test]
    fn matches_closed_forms() {
        let c: f64 = 4.0;
        let (r1, r2) = (0.6, 0.8);
        let sc = c.sqrt();
        for &(u1, u2) in &[(0.3, -0.7), (-1.9, 2.2), (0.01, -0.02)] {
            let u = ParamPoint::new(u1, u2);
            let a = eval_generators(&cfg(c, Family::CoshSinh), u).unwrap();
            assert!((a.f - (r2 * sc * u1).cosh()).abs() < 1e-14);
            assert!((a.g - r2 / r1 * (r1 * sc * u2).sinh()).abs() < 1e-14);
            let b = eval_generators(&cfg(c, Family::SinhCosh), u).unwrap();
            assert!((b.f - (r2 * sc * u1).sinh()).abs() <= 1e-15 * b.f.abs().max(1.0));
            assert!((b.fp - r2 * sc * (r2 * sc * u1).cosh()).abs() < 1e-14);
            assert!((b.g - r2 / r1 * (r1 * sc * u2).cosh()).abs() < 1e-14);
        }
    }

    #[test]
    fn overflow_is_reported() {
        let u = ParamPoint::new(1000.0, 0.0);
        assert!(matches!(
            eval_generators(&cfg(4.0, Family::CoshSinh), u),
            Err(CoreError::Overflow { .. })
        ));
        let s = eval_scaled(&cfg(4.0, Family::CoshSinh), u).unwrap();
        assert!(s.is_finite());
        assert!((s.f - 0.5).abs() < 1e-15);
    }

    #[test]
    fn scaled_values_are_proportional() {
        let v = cfg(4.0, Family::SinhCosh);
        let u = ParamPoint::new(25.0, -13.0);
        let raw = eval_generators(&v, u).unwrap();
        let scaled = eval_scaled(&v, u).unwrap();
        let k = raw.f / scaled.f;
        for (a, b) in [(raw.g, scaled.g), (raw.fp, scaled.fp), (raw.gp, scaled.gp)] {
            assert!((a / b - k).abs() <= 1e-13 * k);
        }
    }

    #[test]
    fn ode_residual_by_second_differences() {
        let configs = [
            cfg(4.0, Family::CoshSinh),
            cfg(4.0, Family::SinhCosh),
            exp_fig4(),
            cfg(
                1.0,
                Family::Exp {
                    a1: 2.0,
                    b1: -0.5,
                    eps1: Sign::Minus,
                    eps2: Sign::Plus,
                },
            ),
        ];
        for v in &configs {
            let [k1, k2] = v.rates();
            // Step chosen so k·h = 1e-3 on each axis.
            let (h1, h2) = (1e-3 / k1, 1e-3 / k2);
            for i in 0..100 {
                let t = i as f64 / 100.0;
                let u = ParamPoint::new((-2.0 + 4.0 * t) / k1, (2.5 - 5.0 * ((7.0 * t) % 1.0)) / k2);
                let at = |p: ParamPoint| eval_generators(v, p).unwrap();
                let c0 = at(u);
                let f2 = (at(u.offset(0, h1)).f - 2.0 * c0.f + at(u.offset(0, -h1)).f) / (h1 * h1);
                let g2 = (at(u.offset(1, h2)).g - 2.0 * c0.g + at(u.offset(1, -h2)).g) / (h2 * h2);
                let scale_f = k1 * k1 * c0.f.abs().max(c0.fp.abs() / k1);
                let scale_g = k2 * k2 * c0.g.abs().max(c0.gp.abs() / k2);
                assert!((f2 - k1 * k1 * c0.f).abs() < 1e-6 * scale_f, "f at {u:?}");
                assert!((g2 - k2 * k2 * c0.g).abs() < 1e-6 * scale_g, "g at {u:?}");
            }
        }
    }
}
