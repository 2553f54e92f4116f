//! The full residual suite over a sampled rectangle.

use rayon::prelude::*;
use ribaucour_core::{ParamPoint, RibaucourSurface};

use crate::checks::{
    check_congruence, check_flatness, check_quoted_congruence, check_quoted_normal, check_ribaucour_system,
    check_surface_point, flatness_rows, Tolerances, FLATNESS_ROWS, SURFACE_ROWS, SYSTEM_ROWS,
};
use crate::fd::FDConfig;
use crate::report::{ReportBuilder, Residual, ResidualReport};
use crate::sampling::{sobol_points, Rect};
use crate::scan::{completeness_scan, ScanGrid};

pub const CONGRUENCE_ROW: &str = "congruence_reduction";
pub const QUOTED_ROTATION_ROW: &str = "quoted_rotation_angles";
pub const QUOTED_NORMAL_ROW: &str = "quoted_normal_expansion";

/// Agreement required between a general surface and its carried-over
/// canonical form; both sides are evaluated independently in closed form.
pub const CONGRUENCE_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub rect: Rect,
    /// Sobol points in `rect`, after the anchors.
    pub samples: usize,
    /// How many of the leading points also get the curvature check.
    pub flatness_samples: usize,
    pub seed: u32,
    pub anchors: Vec<ParamPoint>,
    /// Points with a smaller `|margin|` are skipped by the derivative checks.
    pub min_margin: f64,
    pub fd: FDConfig,
    pub tolerances: Tolerances,
    pub scan: Option<ScanGrid>,
    pub mask_threshold: f64,
    /// Also evaluate the quoted forms known to be wrong.
    pub quoted_checks: bool,
}

impl SuiteConfig {
    pub fn new(rect: Rect) -> Self {
        SuiteConfig {
            rect,
            samples: 1000,
            flatness_samples: 100,
            seed: 0,
            anchors: vec![ParamPoint::ORIGIN],
            min_margin: 0.1,
            fd: FDConfig::default(),
            tolerances: Tolerances::default(),
            scan: None,
            mask_threshold: 1e-3,
            quoted_checks: false,
        }
    }

    pub fn points(&self) -> Vec<ParamPoint> {
        let mut pts = self.anchors.clone();
        pts.extend(sobol_points(&self.rect, self.samples, self.seed));
        pts
    }
}

struct Outcome {
    surface: Option<Vec<Residual>>,
    system: Option<Vec<Residual>>,
    flatness: Option<Option<Vec<Residual>>>,
    extra: Vec<Residual>,
}

fn evaluate(surface: &RibaucourSurface, cfg: &SuiteConfig, u: ParamPoint, with_flatness: bool) -> Outcome {
    let tol = &cfg.tolerances;
    let margin_ok = surface
        .singularity_margin(u)
        .map(|m| m.abs() > cfg.min_margin)
        .unwrap_or(false);
    let surface_rows = margin_ok
        .then(|| check_surface_point(surface, u, &cfg.fd, tol).ok())
        .flatten();
    let system = check_ribaucour_system(surface, u, &cfg.fd, tol).ok();
    let flatness = with_flatness.then(|| {
        margin_ok
            .then(|| check_flatness(surface, u, &cfg.fd).ok())
            .flatten()
            .map(|s| flatness_rows(&s, tol))
    });

    let mut extra = Vec::new();
    if let Some(Ok(r)) = check_congruence(surface, u) {
        extra.push(Residual::new(CONGRUENCE_ROW, r, CONGRUENCE_TOLERANCE));
    }
    if cfg.quoted_checks {
        if let Some(Ok(r)) = check_quoted_congruence(surface, u) {
            extra.push(Residual::new(QUOTED_ROTATION_ROW, r, CONGRUENCE_TOLERANCE));
        }
        if surface.is_regular(u).unwrap_or(false) {
            if let Ok(r) = check_quoted_normal(surface, u) {
                extra.push(Residual::new(QUOTED_NORMAL_ROW, r, tol.algebraic));
            }
        }
    }
    Outcome {
        surface: surface_rows,
        system,
        flatness,
        extra,
    }
}

/// Runs every point check over the anchors and the Sobol points, then the
/// completeness scan if one is configured. Points are evaluated in parallel
/// and folded in sequence order.
pub fn run_suite(surface: &RibaucourSurface, cfg: &SuiteConfig) -> ResidualReport {
    let points = cfg.points();
    let outcomes: Vec<Outcome> = points
        .par_iter()
        .enumerate()
        .map(|(k, u)| evaluate(surface, cfg, *u, k < cfg.flatness_samples))
        .collect();

    let tol = &cfg.tolerances;
    let mut b = ReportBuilder::new();
    for name in SURFACE_ROWS.iter().take(4) {
        b.declare(name, tol.algebraic);
    }
    for name in &SURFACE_ROWS[4..] {
        b.declare(name, tol.first_derivative);
    }
    for name in &SYSTEM_ROWS[..4] {
        b.declare(name, tol.first_derivative);
    }
    for name in &SYSTEM_ROWS[4..6] {
        b.declare(name, tol.cross_derivative);
    }
    b.declare(SYSTEM_ROWS[6], tol.algebraic);
    b.declare(SYSTEM_ROWS[7], tol.algebraic);
    b.declare(SYSTEM_ROWS[8], 0.5);
    b.declare(FLATNESS_ROWS[0], tol.second_derivative);
    b.declare(FLATNESS_ROWS[1], tol.algebraic);
    if surface.config().reduction().is_some() {
        b.declare(CONGRUENCE_ROW, CONGRUENCE_TOLERANCE);
    }

    for (u, o) in points.iter().zip(&outcomes) {
        match &o.surface {
            Some(rows) => b.record(*u, rows),
            None => b.skip(&SURFACE_ROWS),
        }
        match &o.system {
            Some(rows) => b.record(*u, rows),
            None => b.skip(&SYSTEM_ROWS),
        }
        match &o.flatness {
            Some(Some(rows)) => b.record(*u, rows),
            Some(None) => b.skip(&FLATNESS_ROWS),
            None => {}
        }
        b.record(*u, &o.extra);
    }
    b.mark_known_discrepancy(QUOTED_ROTATION_ROW);
    b.mark_known_discrepancy(QUOTED_NORMAL_ROW);

    ResidualReport {
        checks: b.finish(),
        scan: cfg.scan.map(|g| completeness_scan(surface, &g, cfg.mask_threshold)),
    }
}
