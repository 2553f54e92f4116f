//! Seed-torus radii and generator configurations.
//!
//! A configuration is validated once, against the torus it will be used with,
//! producing a [`ValidatedConfig`] that carries the generator coefficients in
//! a uniform `A·cosh + B·sinh` shape for each coordinate.

use crate::error::{CoreError, Result};

/// Relative tolerance for the coefficient constraint of the general family.
pub const CONSTRAINT_TOLERANCE: f64 = 1e-12;

/// Radii of the flat torus `r1² + r2² = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusParams {
    r1: f64,
    r2: f64,
}

impl TorusParams {
    pub fn new(r1: f64) -> Result<Self> {
        if !(r1 > 0.0 && r1 < 1.0) {
            return Err(CoreError::OutOfRange {
                name: "r1",
                value: r1,
                expected: "0 < r1 < 1",
            });
        }
        // (1 - r1)(1 + r1) avoids the cancellation in 1 - r1² for r1 near 1.
        let r2 = ((1.0 - r1) * (1.0 + r1)).sqrt();
        Ok(Self { r1, r2 })
    }

    pub fn r1(&self) -> f64 {
        self.r1
    }

    pub fn r2(&self) -> f64 {
        self.r2
    }

    /// Lamé coefficient shared by both coordinates, `a1 = a2 = r1·r2`.
    pub fn lame(&self) -> f64 {
        self.r1 * self.r2
    }

    /// `λ1 = −r2/r1`, `λ2 = r1/r2`; the seed's principal curvatures are `−λi`.
    pub fn lambdas(&self) -> [f64; 2] {
        [-self.r2 / self.r1, self.r1 / self.r2]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn from_value(v: f64) -> Option<Self> {
        if v == 1.0 {
            Some(Sign::Plus)
        } else if v == -1.0 {
            Some(Sign::Minus)
        } else {
            None
        }
    }

    fn of(v: f64) -> Self {
        if v < 0.0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}

/// Which solution of `f'' = c·r2²·f`, `g'' = c·r1²·g` generates the transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    /// `f = cosh(r2√c·u1)`, `g = (r2/r1)·sinh(r1√c·u2)`.
    CoshSinh,
    /// `f = sinh(r2√c·u1)`, `g = (r2/r1)·cosh(r1√c·u2)`.
    SinhCosh,
    /// `f = a1·exp(ε1·r2√c·u1)`, `g = b1·exp(ε2·r1√c·u2)`.
    Exp {
        a1: f64,
        b1: f64,
        eps1: Sign,
        eps2: Sign,
    },
    /// `f = a1·cosh + a2·sinh`, `g = b1·cosh + b2·sinh`, subject to
    /// `(a1² − a2²)·r2² = (b2² − b1²)·r1²`.
    General { a1: f64, a2: f64, b1: f64, b2: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorConfig {
    /// Flatness parameter in `Ω1² + Ω2² = c·(Ω² + W²)`.
    pub c: f64,
    pub family: Family,
}

impl GeneratorConfig {
    pub fn new(c: f64, family: Family) -> Self {
        Self { c, family }
    }
}

/// Canonical equivalent of a general-family configuration.
///
/// With `α = shift1/(r2√c)` and `β = shift2/(r1√c)` the general generators are
/// `f(u1) = scale·f0(u1 + α)` and `g(u2) = ±scale·g0(u2 + β)`, where `f0, g0`
/// belong to `family` and the minus sign is taken when `mirrored` is set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reduction {
    pub family: Family,
    pub scale: f64,
    /// `A2` of the hyperbolic phase form.
    pub shift1: f64,
    /// `B2` of the hyperbolic phase form.
    pub shift2: f64,
    pub mirrored: bool,
}

/// Coefficients of `A·cosh(x) + B·sinh(x)` for one generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypCoeffs {
    pub cosh: f64,
    pub sinh: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidatedConfig {
    pub(crate) params: TorusParams,
    pub(crate) c: f64,
    pub(crate) family: Family,
    pub(crate) f: HypCoeffs,
    pub(crate) g: HypCoeffs,
    pub(crate) reduction: Option<Reduction>,
}

impl ValidatedConfig {
    pub fn params(&self) -> TorusParams {
        self.params
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn config(&self) -> GeneratorConfig {
        GeneratorConfig::new(self.c, self.family)
    }

    /// `Some` only for [`Family::General`].
    pub fn reduction(&self) -> Option<&Reduction> {
        self.reduction.as_ref()
    }

    /// Rates `(r2√c, r1√c)` of the hyperbolic arguments.
    pub fn rates(&self) -> [f64; 2] {
        let sc = self.c.sqrt();
        [self.params.r2 * sc, self.params.r1 * sc]
    }

    pub fn f_coeffs(&self) -> HypCoeffs {
        self.f
    }

    pub fn g_coeffs(&self) -> HypCoeffs {
        self.g
    }
}

/// Checks `cfg` against `params` and normalises it for evaluation.
pub fn validate_config(params: TorusParams, cfg: GeneratorConfig) -> Result<ValidatedConfig> {
    let c = cfg.c;
    if !(c > 0.0 && c.is_finite()) {
        return Err(CoreError::OutOfRange {
            name: "c",
            value: c,
            expected: "finite c > 0",
        });
    }
    let ratio = params.r2 / params.r1;

    let (f, g, reduction) = match cfg.family {
        Family::CoshSinh => (
            HypCoeffs { cosh: 1.0, sinh: 0.0 },
            HypCoeffs {
                cosh: 0.0,
                sinh: ratio,
            },
            None,
        ),
        Family::SinhCosh => (
            HypCoeffs { cosh: 0.0, sinh: 1.0 },
            HypCoeffs {
                cosh: ratio,
                sinh: 0.0,
            },
            None,
        ),
        Family::Exp { a1, b1, eps1, eps2 } => {
            check_finite("a1", a1)?;
            check_finite("b1", b1)?;
            if a1 == 0.0 && b1 == 0.0 {
                return Err(CoreError::DegenerateGenerator);
            }
            (
                HypCoeffs {
                    cosh: a1,
                    sinh: eps1.value() * a1,
                },
                HypCoeffs {
                    cosh: b1,
                    sinh: eps2.value() * b1,
                },
                None,
            )
        }
        Family::General { a1, a2, b1, b2 } => {
            for (name, v) in [("a1", a1), ("a2", a2), ("b1", b1), ("b2", b2)] {
                check_finite(name, v)?;
            }
            let reduction = reduce_general(params, a1, a2, b1, b2)?;
            (
                HypCoeffs { cosh: a1, sinh: a2 },
                HypCoeffs { cosh: b1, sinh: b2 },
                Some(reduction),
            )
        }
    };

    Ok(ValidatedConfig {
        params,
        c,
        family: cfg.family,
        f,
        g,
        reduction,
    })
}

fn check_finite(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(CoreError::OutOfRange {
            name,
            value: v,
            expected: "finite",
        })
    }
}

fn reduce_general(params: TorusParams, a1: f64, a2: f64, b1: f64, b2: f64) -> Result<Reduction> {
    let (r1, r2) = (params.r1, params.r2);
    let lhs = (a1 * a1 - a2 * a2) * r2 * r2;
    let rhs = (b2 * b2 - b1 * b1) * r1 * r1;
    let magnitude = (a1 * a1 + a2 * a2) * r2 * r2 + (b1 * b1 + b2 * b2) * r1 * r1;
    if magnitude == 0.0 {
        return Err(CoreError::DegenerateGenerator);
    }
    if (lhs - rhs).abs() > CONSTRAINT_TOLERANCE * magnitude {
        return Err(CoreError::ConstraintViolated { lhs, rhs });
    }

    let a1_sq_diff = a1 * a1 - a2 * a2;

    // A1 = 0 up to rounding: a2 = ε1·a1 and b2 = ε2·b1.
    if (a1_sq_diff * r2 * r2).abs() <= CONSTRAINT_TOLERANCE * magnitude {
        let eps1 = Sign::of(a1 * a2);
        let eps2 = Sign::of(b1 * b2);
        if a1 == 0.0 && b1 == 0.0 {
            return Err(CoreError::DegenerateGenerator);
        }
        return Ok(Reduction {
            family: Family::Exp { a1, b1, eps1, eps2 },
            scale: 1.0,
            shift1: 0.0,
            shift2: 0.0,
            mirrored: false,
        });
    }

    let violated = || CoreError::ConstraintViolated { lhs, rhs };
    if a1_sq_diff > 0.0 {
        // f = sgn(a1)·√A1·cosh(x + A2), g = sgn(b2)·√(b2² − b1²)·sinh(y + B2).
        if b2.abs() <= b1.abs() {
            return Err(violated());
        }
        let shift1 = (a2 / a1).atanh();
        let shift2 = (b1 / b2).atanh();
        if !(shift1.is_finite() && shift2.is_finite()) {
            return Err(violated());
        }
        Ok(Reduction {
            family: Family::CoshSinh,
            scale: a1.signum() * a1_sq_diff.sqrt(),
            shift1,
            shift2,
            mirrored: a1.signum() != b2.signum(),
        })
    } else {
        // f = sgn(a2)·√−A1·sinh(x + A2), g = sgn(b1)·√(b1² − b2²)·cosh(y + B2).
        if b1.abs() <= b2.abs() {
            return Err(violated());
        }
        let shift1 = (a1 / a2).atanh();
        let shift2 = (b2 / b1).atanh();
        if !(shift1.is_finite() && shift2.is_finite()) {
            return Err(violated());
        }
        Ok(Reduction {
            family: Family::SinhCosh,
            scale: b1.signum() * (-a1_sq_diff).sqrt(),
            shift1,
            shift2,
            mirrored: a2.signum() != b1.signum(),
        })
    }
}
