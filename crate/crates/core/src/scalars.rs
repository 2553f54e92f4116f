use crate::error::{CoreError, Result};
use crate::generators::{eval_generators, GeneratorValues};
use crate::params::{TorusParams, ValidatedConfig};
use crate::torus::ParamPoint;

/// Ribaucour scalars at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarBundle {
    pub f: f64,
    pub g: f64,
    pub fp: f64,
    pub gp: f64,
    pub omega: f64,
    /// `Ω1 = f'`
    pub omega1: f64,
    /// `Ω2 = g'`
    pub omega2: f64,
    pub w: f64,
    /// `S = (1 + c)(Ω² + W²)`
    pub s: f64,
    pub t1: f64,
    pub t2: f64,
    /// Sphere-congruence angle `atan2(Ω, W)`.
    pub theta: f64,
    /// `W·(W + λi·Ω)`; both must be non-zero for the transform to exist.
    pub hypothesis: [f64; 2],
}

impl ScalarBundle {
    pub(crate) fn from_generators(params: &TorusParams, c: f64, v: GeneratorValues) -> Self {
        let (r1, r2) = (params.r1(), params.r2());
        let omega = r1 * r2 * (v.f + v.g);
        let w = r2 * r2 * v.f - r1 * r1 * v.g;
        let s = (1.0 + c) * (omega * omega + w * w);
        let [l1, l2] = params.lambdas();
        ScalarBundle {
            f: v.f,
            g: v.g,
            fp: v.fp,
            gp: v.gp,
            omega,
            omega1: v.fp,
            omega2: v.gp,
            w,
            s,
            t1: 2.0 * r2 * (1.0 + c) * v.f / r1,
            t2: 2.0 * r1 * (1.0 + c) * v.g / r2,
            theta: omega.atan2(w),
            hypothesis: [w * (w + l1 * omega), w * (w + l2 * omega)],
        }
    }

    /// `S` from its defining sum `Ω1² + Ω2² + W² + Ω²`.
    pub fn s_from_sum(&self) -> f64 {
        self.omega1 * self.omega1 + self.omega2 * self.omega2 + self.w * self.w + self.omega * self.omega
    }

    pub fn hypothesis_holds(&self) -> bool {
        self.hypothesis.iter().all(|h| *h != 0.0)
    }

    pub fn t(&self, axis: usize) -> f64 {
        if axis == 0 {
            self.t1
        } else {
            self.t2
        }
    }

    pub fn omega_i(&self, axis: usize) -> f64 {
        if axis == 0 {
            self.omega1
        } else {
            self.omega2
        }
    }

    fn is_finite(&self) -> bool {
        [self.omega, self.w, self.s, self.t1, self.t2, self.fp, self.gp]
            .iter()
            .all(|x| x.is_finite())
    }
}

/// Unscaled scalars; errors with `Overflow` when any of them is not finite.
pub fn eval_scalars(cfg: &ValidatedConfig, u: ParamPoint) -> Result<ScalarBundle> {
    let v = eval_generators(cfg, u)?;
    let b = ScalarBundle::from_generators(&cfg.params, cfg.c, v);
    if !b.is_finite() {
        return Err(CoreError::Overflow { u1: u.u1, u2: u.u2 });
    }
    if b.s == 0.0 {
        return Err(CoreError::DegeneratePoint { u1: u.u1, u2: u.u2 });
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{validate_config, Family, GeneratorConfig, Sign};

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn fig1_scalars_at_origin() {
        let p = TorusParams::new(0.6).unwrap();
        let v = validate_config(p, GeneratorConfig::new(4.0, Family::CoshSinh)).unwrap();
        let b = eval_scalars(&v, ParamPoint::ORIGIN).unwrap();
        assert!((b.omega - 0.48).abs() < 1e-15);
        assert!((b.w - 0.64).abs() < 1e-15);
        assert!((b.s - 3.2).abs() < 1e-14);
        assert_eq!(b.omega1, 0.0);
        assert!((b.omega2 - 1.6).abs() < 1e-15);
        assert!((b.t1 - 40.0 / 3.0).abs() < 1e-13);
        assert_eq!(b.t2, 0.0);
        // S = 0 + 2.56 + 0.4096 + 0.2304.
        assert!((b.s_from_sum() - 3.2).abs() < 1e-14);
        assert!(b.hypothesis_holds());
    }

    #[test]
    fn fig4_scalars_at_origin() {
        let p = TorusParams::new(0.6).unwrap();
        let family = Family::Exp {
            a1: 1.0,
            b1: 1.0,
            eps1: Sign::Plus,
            eps2: Sign::Plus,
        };
        let v = validate_config(p, GeneratorConfig::new(1e-3, family)).unwrap();
        let b = eval_scalars(&v, ParamPoint::ORIGIN).unwrap();
        assert!((b.omega - 0.96).abs() < 1e-15);
        assert!((b.w - 0.28).abs() < 1e-15);
        assert!((b.s - 1.001).abs() < 1e-14);
        let side = b.omega1 * b.omega1 + b.omega2 * b.omega2;
        assert!(rel(side, 1e-3) < 1e-12);
        assert!(rel(side, 1e-3 * (b.omega * b.omega + b.w * b.w)) < 1e-12);
    }

    #[test]
    fn identities_hold_across_families() {
        let p = TorusParams::new(0.5).unwrap();
        let families = [
            Family::CoshSinh,
            Family::SinhCosh,
            Family::Exp {
                a1: 0.7,
                b1: -1.3,
                eps1: Sign::Minus,
                eps2: Sign::Plus,
            },
        ];
        for family in families {
            let v = validate_config(p, GeneratorConfig::new(1.0, family)).unwrap();
            for i in 0..200 {
                let t = i as f64 * 0.618_033_988_749_895;
                let u = ParamPoint::new(4.0 * (t.fract() - 0.5), 4.0 * ((t * 1.7).fract() - 0.5));
                let b = eval_scalars(&v, u).unwrap();
                let sum = b.omega * b.omega + b.w * b.w;
                assert!(rel(b.s, b.s_from_sum()) < 1e-12);
                assert!(rel(sum, p.r2() * p.r2() * b.f * b.f + p.r1() * p.r1() * b.g * b.g) < 1e-12);
                assert!(rel(b.omega1 * b.omega1 + b.omega2 * b.omega2, sum) < 1e-12);
            }
        }
    }

    #[test]
    fn overflowing_scalars_are_reported() {
        let p = TorusParams::new(0.6).unwrap();
        let v = validate_config(p, GeneratorConfig::new(4.0, Family::CoshSinh)).unwrap();
        // f is finite but S ~ f² is not.
        let u = ParamPoint::new(400.0 / 1.6, 0.0);
        assert!(eval_generators(&v, u).is_ok());
        assert!(matches!(eval_scalars(&v, u), Err(CoreError::Overflow { .. })));
    }
}
