//! Point checks of the closed forms against finite-difference oracles.

use ribaucour_core::congruence::{canonical_form, congruence_residual, quoted_rotation_angles};
use ribaucour_core::errata::quoted_normal_expansion;
use ribaucour_core::{CurvatureLineSurface, ParamPoint, RibaucourSurface};
use serde::Serialize;

use crate::error::Result;
use crate::fd::{central_diff, FDConfig};
use crate::report::Residual;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Identities evaluated without differencing.
    pub algebraic: f64,
    /// First derivatives from one central difference.
    pub first_derivative: f64,
    /// Quantities that are identically zero after differencing, such as
    /// `∂Ω1/∂u2`.
    pub cross_derivative: f64,
    /// Second derivatives from nested differences.
    pub second_derivative: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            algebraic: 1e-12,
            first_derivative: 1e-6,
            cross_derivative: 1e-8,
            second_derivative: 1e-4,
        }
    }
}

pub const SURFACE_ROWS: [&str; 11] = [
    "unit_position",
    "unit_normal",
    "position_normal_orthogonal",
    "curvature_product",
    "metric_orthogonality",
    "metric_match_1",
    "metric_match_2",
    "second_form_orthogonality_12",
    "second_form_orthogonality_21",
    "shape_eigenvalue_1",
    "shape_eigenvalue_2",
];

pub const SYSTEM_ROWS: [&str; 9] = [
    "omega_derivative_1",
    "omega_derivative_2",
    "w_derivative_1",
    "w_derivative_2",
    "omega1_independent_of_u2",
    "omega2_independent_of_u1",
    "side_condition",
    "s_identity",
    "hypothesis_violations",
];

pub const FLATNESS_ROWS: [&str; 2] = ["intrinsic_curvature", "gauss_equation"];

/// Unit-sphere, orthogonality, metric and shape-operator residuals at a
/// regular point. Tangent vectors come from central differences of `X̃` and
/// `Ñ`; everything they are compared with is closed form. Rows are made
/// dimensionless by the natural scale of each quantity.
pub fn check_surface_point(
    surface: &RibaucourSurface,
    u: ParamPoint,
    fd: &FDConfig,
    tol: &Tolerances,
) -> Result<Vec<Residual>> {
    let x = surface.transformed_point(u)?;
    let n = surface.transformed_normal(u)?;
    let [psi1, psi2] = surface.metric_coefficients(u)?;
    let [l1, l2] = surface.principal_curvatures(u)?;
    let guard: Option<&dyn CurvatureLineSurface> = Some(surface);

    let dx = |axis| central_diff(|v| Ok(surface.transformed_point(v)?), guard, u, axis, fd);
    let dn = |axis| central_diff(|v| Ok(surface.transformed_normal(v)?), guard, u, axis, fd);
    let (x1, x2) = (dx(0)?, dx(1)?);
    let (n1, n2) = (dn(0)?, dn(1)?);
    let (len1, len2) = (x1.norm(), x2.norm());

    let (alg, fdt) = (tol.algebraic, tol.first_derivative);
    Ok(vec![
        Residual::new("unit_position", x.norm_squared() - 1.0, alg),
        Residual::new("unit_normal", n.norm_squared() - 1.0, alg),
        Residual::new("position_normal_orthogonal", x.dot(&n), alg),
        Residual::new("curvature_product", l1 * l2 + 1.0, alg),
        Residual::new("metric_orthogonality", x1.dot(&x2) / (len1 * len2), fdt),
        Residual::new("metric_match_1", (x1.norm_squared() - psi1 * psi1) / (psi1 * psi1), fdt),
        Residual::new("metric_match_2", (x2.norm_squared() - psi2 * psi2) / (psi2 * psi2), fdt),
        Residual::new("second_form_orthogonality_12", n1.dot(&x2) / (len1 * len2), fdt),
        Residual::new("second_form_orthogonality_21", n2.dot(&x1) / (len1 * len2), fdt),
        Residual::new("shape_eigenvalue_1", (n1.dot(&x1) / (len1 * len1) - l1) / l1.abs().max(1.0), fdt),
        Residual::new("shape_eigenvalue_2", (n2.dot(&x2) / (len2 * len2) - l2) / l2.abs().max(1.0), fdt),
    ])
}

/// Intrinsic Gaussian curvature from the metric alone next to the value the
/// Gauss equation gives from the principal curvatures.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FlatnessSample {
    /// `−(1/ψ1ψ2)[∂1(∂1ψ2/ψ1) + ∂2(∂2ψ1/ψ2)]` by nested central differences.
    pub intrinsic: f64,
    /// `1 + λ̃1λ̃2`.
    pub gauss: f64,
}

pub fn check_flatness(surface: &dyn CurvatureLineSurface, u: ParamPoint, fd: &FDConfig) -> Result<FlatnessSample> {
    let guard = Some(surface);
    let outer = fd.outer();
    // ∂_a ψ_b / ψ_c at v.
    let ratio = |v: ParamPoint, axis: usize, b: usize, c: usize| -> Result<f64> {
        let d = central_diff(|w| Ok(surface.metric(w)?[b]), guard, v, axis, fd)?;
        Ok(d / surface.metric(v)?[c])
    };
    let t1 = central_diff(|v| ratio(v, 0, 1, 0), guard, u, 0, &outer)?;
    let t2 = central_diff(|v| ratio(v, 1, 0, 1), guard, u, 1, &outer)?;
    let [psi1, psi2] = surface.metric(u)?;
    let [l1, l2] = surface.lambdas(u)?;
    Ok(FlatnessSample {
        intrinsic: -(t1 + t2) / (psi1 * psi2),
        gauss: 1.0 + l1 * l2,
    })
}

pub fn flatness_rows(sample: &FlatnessSample, tol: &Tolerances) -> Vec<Residual> {
    vec![
        Residual::new("intrinsic_curvature", sample.intrinsic, tol.second_derivative),
        Residual::new("gauss_equation", sample.gauss, tol.algebraic),
    ]
}

/// The linear system satisfied by `Ω` and `W` along the seed's curvature lines:
/// `∂iΩ = r1r2Ωi`, `∂iW = −r1r2Ωiλi`, `∂jΩi = 0` for `i ≠ j`, plus the side
/// condition `Ω1² + Ω2² = c(Ω² + W²)` and the closed form of `S`. Residuals
/// are scaled by `√S`, the size of the scalars involved.
pub fn check_ribaucour_system(
    surface: &RibaucourSurface,
    u: ParamPoint,
    fd: &FDConfig,
    tol: &Tolerances,
) -> Result<Vec<Residual>> {
    let cfg = surface.config();
    let p = cfg.params();
    let a = p.lame();
    let lam = p.lambdas();
    let b = surface.scalars(u)?;
    let norm = b.s.sqrt();

    let diff = |axis, pick: fn(&ribaucour_core::ScalarBundle) -> f64| {
        central_diff(|v| Ok(pick(&surface.scalars(v)?)), None, u, axis, fd)
    };
    let mut rows = Vec::with_capacity(SYSTEM_ROWS.len());
    for (axis, om, w) in [
        (0, "omega_derivative_1", "w_derivative_1"),
        (1, "omega_derivative_2", "w_derivative_2"),
    ] {
        let d_omega = diff(axis, |s| s.omega)?;
        let d_w = diff(axis, |s| s.w)?;
        let oi = b.omega_i(axis);
        rows.push(Residual::new(om, (d_omega - a * oi) / norm, tol.first_derivative));
        rows.push(Residual::new(w, (d_w + a * oi * lam[axis]) / norm, tol.first_derivative));
    }
    rows.push(Residual::new(
        "omega1_independent_of_u2",
        diff(1, |s| s.omega1)? / norm,
        tol.cross_derivative,
    ));
    rows.push(Residual::new(
        "omega2_independent_of_u1",
        diff(0, |s| s.omega2)? / norm,
        tol.cross_derivative,
    ));
    let base = b.omega * b.omega + b.w * b.w;
    rows.push(Residual::new(
        "side_condition",
        (b.omega1 * b.omega1 + b.omega2 * b.omega2 - cfg.c() * base) / b.s,
        tol.algebraic,
    ));
    rows.push(Residual::new("s_identity", (b.s - b.s_from_sum()) / b.s, tol.algebraic));
    // Indicator: 1 where W(W + λiΩ) vanishes for some i.
    let violated = if b.hypothesis_holds() { 0.0 } else { 1.0 };
    rows.push(Residual::new("hypothesis_violations", violated, 0.5));
    Ok(rows)
}

/// Max-norm gap between a general-family surface and its canonical form moved
/// by the reduction congruence; `None` for the canonical families.
pub fn check_congruence(surface: &RibaucourSurface, u: ParamPoint) -> Option<Result<f64>> {
    let (canonical, congruence) = canonical_form(surface)?;
    Some(congruence_residual(surface, &canonical, &congruence, u).map_err(Into::into))
}

/// Same as [`check_congruence`] with the rotation angles in their commonly
/// quoted form, which lacks the radius factors.
pub fn check_quoted_congruence(surface: &RibaucourSurface, u: ParamPoint) -> Option<Result<f64>> {
    let (canonical, mut congruence) = canonical_form(surface)?;
    let (t, p) = quoted_rotation_angles(surface.config())?;
    // The quoted form has no reflection sign; apply it the same way.
    congruence.rotation = (congruence.sign[0] * t, congruence.sign[1] * p);
    Some(congruence_residual(surface, &canonical, &congruence, u).map_err(Into::into))
}

/// `| |Ñ|² − 1 |` for the quoted componentwise normal expansion.
pub fn check_quoted_normal(surface: &RibaucourSurface, u: ParamPoint) -> Result<f64> {
    let n = quoted_normal_expansion(surface, u)?;
    Ok(n.norm_squared() - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ribaucour_core::{Family, GeneratorConfig, SeedTorus, TorusParams};

    fn fig1() -> RibaucourSurface {
        RibaucourSurface::new(TorusParams::new(0.6).unwrap(), GeneratorConfig::new(4.0, Family::CoshSinh)).unwrap()
    }

    fn row(rows: &[Residual], name: &str) -> f64 {
        rows.iter().find(|r| r.name == name).unwrap().value
    }

    #[test]
    fn shape_operator_at_the_anchor() {
        let rows = check_surface_point(&fig1(), ParamPoint::ORIGIN, &FDConfig::default(), &Tolerances::default()).unwrap();
        assert_eq!(rows.len(), SURFACE_ROWS.len());
        for r in &rows {
            assert!(r.value.abs() < r.tolerance, "{} = {}", r.name, r.value);
        }
        // The residual is relative to max(1, |λ̃|); λ̃1 = −4/3 here.
        assert!(row(&rows, "shape_eigenvalue_1").abs() * 4.0 / 3.0 < 1e-6);
    }

    #[test]
    fn seed_torus_is_exactly_flat() {
        let seed = SeedTorus(TorusParams::new(0.6).unwrap());
        let k = check_flatness(&seed, ParamPoint::new(0.3, -1.1), &FDConfig::default()).unwrap();
        assert_eq!(k.intrinsic, 0.0);
        assert!(k.gauss.abs() < 1e-15);
    }

    #[test]
    fn transformed_surface_is_flat_at_the_anchor() {
        let k = check_flatness(&fig1(), ParamPoint::ORIGIN, &FDConfig::default()).unwrap();
        assert!(k.intrinsic.abs() < 1e-4, "{}", k.intrinsic);
        assert!(k.gauss.abs() < 1e-12);
    }

    #[test]
    fn linear_system_holds() {
        let rows =
            check_ribaucour_system(&fig1(), ParamPoint::new(0.4, -0.7), &FDConfig::default(), &Tolerances::default())
                .unwrap();
        assert_eq!(rows.len(), SYSTEM_ROWS.len());
        for r in &rows {
            assert!(r.value.abs() < r.tolerance, "{} = {}", r.name, r.value);
        }
    }

    #[test]
    fn stencil_across_the_singular_curve() {
        let root = 3f64.asinh() / 1.2;
        let s = fig1();
        let fd = FDConfig::default();
        for u2 in [root, root + 4e-6, root - 4e-6] {
            let r = check_surface_point(&s, ParamPoint::new(0.0, u2), &fd, &Tolerances::default());
            assert!(r.is_err(), "{u2}");
        }
        let e = check_flatness(&s, ParamPoint::new(0.0, root + 5e-4), &fd).unwrap_err();
        assert!(matches!(e, crate::VerifyError::StencilHitsSingularity { .. }));
    }

    #[test]
    fn quoted_forms_fail_where_expected() {
        let s = fig1();
        assert!(check_quoted_normal(&s, ParamPoint::ORIGIN).unwrap().abs() > 0.1);
        assert!(check_congruence(&s, ParamPoint::ORIGIN).is_none());

        let p = TorusParams::new(0.6).unwrap();
        let (a2, b2): (f64, f64) = (0.7, -0.3);
        let g = RibaucourSurface::new(
            p,
            GeneratorConfig::new(
                4.0,
                Family::General {
                    a1: a2.cosh(),
                    a2: a2.sinh(),
                    b1: (p.r2() / p.r1()) * b2.sinh(),
                    b2: (p.r2() / p.r1()) * b2.cosh(),
                },
            ),
        )
        .unwrap();
        let u = ParamPoint::new(0.3, -0.4);
        assert!(check_congruence(&g, u).unwrap().unwrap() < 1e-12);
        assert!(check_quoted_congruence(&g, u).unwrap().unwrap() > 1e-2);
    }
}
