use proptest::prelude::*;
use ribaucour_core::{torus_point, Family, GeneratorConfig, ParamPoint, RibaucourSurface, Sign, TorusParams, Vec4};
use ribaucour_verify::{central_diff, run_suite, FDConfig, Rect, SuiteConfig};

fn surface(r1: f64, c: f64, family: Family) -> RibaucourSurface {
    RibaucourSurface::new(TorusParams::new(r1).unwrap(), GeneratorConfig::new(c, family)).unwrap()
}

fn exp(eps2: Sign) -> Family {
    Family::Exp {
        a1: 1.0,
        b1: 1.0,
        eps1: Sign::Plus,
        eps2,
    }
}

fn cases() -> Vec<(&'static str, RibaucourSurface, Rect)> {
    let near = Rect::new([-2.0, 2.0], [-2.5, 2.5]);
    let far = Rect::square(60.0);
    let (a2, b2): (f64, f64) = (0.7, -0.3);
    let ratio = 0.8 / 0.6;
    vec![
        ("cosh-sinh", surface(0.6, 4.0, Family::CoshSinh), near),
        ("sinh-cosh", surface(0.6, 4.0, Family::SinhCosh), near),
        ("cosh-sinh small c", surface(0.6, 1e-3, Family::CoshSinh), far),
        ("sinh-cosh small c", surface(0.6, 1e-3, Family::SinhCosh), far),
        ("exp ++", surface(0.6, 1e-3, exp(Sign::Plus)), far),
        ("exp +-", surface(0.6, 1e-3, exp(Sign::Minus)), far),
        ("exp r1=1/2", surface(0.5, 1.0, exp(Sign::Minus)), Rect::square(3.0)),
        (
            "general shifted",
            surface(
                0.6,
                4.0,
                Family::General {
                    a1: a2.cosh(),
                    a2: a2.sinh(),
                    b1: ratio * b2.sinh(),
                    b2: ratio * b2.cosh(),
                },
            ),
            near,
        ),
    ]
}

#[test]
fn every_family_passes_the_suite() {
    for (name, s, rect) in cases() {
        let mut cfg = SuiteConfig::new(rect);
        cfg.samples = 300;
        cfg.flatness_samples = 40;
        let report = run_suite(&s, &cfg);
        let fails: Vec<String> = report
            .failures()
            .map(|c| format!("{} max {:e} at {:?}", c.name, c.max_abs, c.argmax))
            .collect();
        assert!(fails.is_empty(), "{name}: {fails:#?}");
        let metric = report.check("metric_match_1").unwrap();
        assert!(metric.count >= 150, "{name}: only {} regular samples", metric.count);
        assert!(metric.max_abs >= metric.mean_abs && metric.mean_abs >= 0.0);
    }
}

#[test]
fn general_surface_reports_the_reduction() {
    let (name, s, rect) = cases().pop().unwrap();
    let mut cfg = SuiteConfig::new(rect);
    cfg.samples = 50;
    cfg.quoted_checks = true;
    let r = run_suite(&s, &cfg);
    let c = r.check("congruence_reduction").unwrap();
    assert!(c.pass && c.count > 0, "{name}");
    let q = r.check("quoted_rotation_angles").unwrap();
    assert!(!q.pass && q.max_abs > 1e-2);
    assert!(r.passed());
}

/// Error of the plain stencil falls by four when the step halves; with
/// Richardson extrapolation it is orders of magnitude smaller still.
#[test]
fn observed_convergence_order() {
    let p = TorusParams::new(0.6).unwrap();
    let u = ParamPoint::new(0.7, -0.2);
    let (s, c) = (p.r2() * u.u1).sin_cos();
    let exact = Vec4::new(-s, c, 0.0, 0.0) * p.lame();
    let err = |h: f64, rich: bool| {
        let fd = FDConfig::new(h, rich).unwrap();
        (central_diff(|v| Ok(torus_point(&p, v)), None, u, 0, &fd).unwrap() - exact).amax()
    };
    let ratio = err(2e-3, false) / err(1e-3, false);
    assert!((ratio - 4.0).abs() < 0.05, "{ratio}");
    assert!(err(1e-3, true) < err(1e-3, false) * 1e-4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fd_tangent_matches_frame(u1 in -5.0f64..5.0, u2 in -5.0f64..5.0, r1 in 0.1f64..0.9) {
        let p = TorusParams::new(r1).unwrap();
        let u = ParamPoint::new(u1, u2);
        let frame = ribaucour_core::torus_frame(&p, u);
        let fd = FDConfig::default();
        for axis in 0..2 {
            let d = central_diff(|v| Ok(torus_point(&p, v)), None, u, axis, &fd).unwrap();
            prop_assert!((d - frame.e(axis) * p.lame()).amax() < 1e-9);
        }
    }
}
