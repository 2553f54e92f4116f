//! The three subcommands, independent of argument parsing.

use std::path::{Path, PathBuf};

use ribaucour_core::ParamPoint;
use ribaucour_mesh::{build_mesh, export_json, export_obj, MeshSummary, ProjectionKind};
use ribaucour_verify::suite::{QUOTED_NORMAL_ROW, QUOTED_ROTATION_ROW};
use ribaucour_verify::{run_suite, Rect, ResidualReport, ScanGrid, SuiteConfig};
use serde::Serialize;

use crate::config::{preset_note, FileConfig, RunConfig};
use crate::error::{CliError, Result};

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenerateSummary {
    pub name: String,
    pub config: FileConfig,
    pub mesh: MeshSummary,
    /// File names, relative to the output directory.
    pub files: Vec<String>,
    pub note: &'static str,
}

/// Writes `<name>.obj` (stereographic projection) and/or `<name>.mesh.json`
/// (always with `json`, or when no projection is applied), then
/// `<name>.summary.json`.
pub fn run_generate(rc: &RunConfig, out_dir: &Path, json: bool) -> Result<GenerateSummary> {
    let (mesh, stats) = build_mesh(&rc.surface, &rc.grid, rc.mask_threshold, &rc.projection)?;
    std::fs::create_dir_all(out_dir).map_err(io_err(out_dir))?;

    let mut files = Vec::new();
    if rc.projection.kind == ProjectionKind::Stereographic {
        let name = format!("{}.obj", rc.name);
        export_obj(&mesh, &out_dir.join(&name))?;
        files.push(name);
    }
    if json || rc.projection.kind == ProjectionKind::None {
        let name = format!("{}.mesh.json", rc.name);
        export_json(&mesh, &rc.resolved, &out_dir.join(&name))?;
        files.push(name);
    }
    let summary_name = format!("{}.summary.json", rc.name);
    files.push(summary_name.clone());
    let summary = GenerateSummary {
        name: rc.name.clone(),
        config: rc.resolved.clone(),
        mesh: stats,
        files,
        note: preset_note(),
    };
    let path = out_dir.join(&summary_name);
    let mut text = serde_json::to_string_pretty(&summary).map_err(|e| CliError::Parse(e.to_string()))?;
    text.push('\n');
    std::fs::write(&path, text).map_err(io_err(&path))?;
    Ok(summary)
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    pub samples: usize,
    pub seed: u32,
    /// Restrict the report to these checks; aliases `printed-ntiu` and
    /// `printed-rotation` select the known-discrepancy checks.
    pub checks: Vec<String>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            samples: 1000,
            seed: 0,
            checks: Vec::new(),
        }
    }
}

fn check_name(alias: &str) -> &str {
    match alias {
        "printed-ntiu" => QUOTED_NORMAL_ROW,
        "printed-rotation" => QUOTED_ROTATION_ROW,
        other => other,
    }
}

pub fn suite_config(rc: &RunConfig, opts: &VerifyOptions) -> SuiteConfig {
    let mut cfg = SuiteConfig::new(Rect::new(rc.grid.u1, rc.grid.u2));
    cfg.samples = opts.samples;
    cfg.seed = opts.seed;
    cfg.anchors.extend(rc.anchors.iter().copied());
    cfg.fd = rc.fd;
    cfg.mask_threshold = rc.mask_threshold;
    cfg.scan = Some(ScanGrid::new(rc.grid.u1, rc.grid.u2, rc.grid.n));
    cfg.quoted_checks = !opts.checks.is_empty();
    cfg
}

/// Runs the suite and writes `<name>.verify.json`; see [`verdict`] for the
/// pass/fail decision.
pub fn run_verify(rc: &RunConfig, opts: &VerifyOptions, out_dir: &Path) -> Result<(ResidualReport, PathBuf)> {
    let mut report = run_suite(&rc.surface, &suite_config(rc, opts));
    if !opts.checks.is_empty() {
        let wanted: Vec<&str> = opts.checks.iter().map(|c| check_name(c)).collect();
        if let Some(missing) = wanted.iter().find(|w| report.check(w).is_none()) {
            if *missing == QUOTED_ROTATION_ROW {
                return Err(CliError::invalid(
                    "check",
                    "the rotation-angle check applies only to family \"general\" with a2 or b2 nonzero",
                ));
            }
            let known: Vec<&str> = report.checks.iter().map(|c| c.name.as_str()).collect();
            return Err(CliError::invalid(
                "check",
                format!("{missing:?} is not available here; known: {}", known.join(", ")),
            ));
        }
        report.checks.retain(|c| wanted.contains(&c.name.as_str()));
        report.scan = None;
    }
    std::fs::create_dir_all(out_dir).map_err(io_err(out_dir))?;
    let path = out_dir.join(format!("{}.verify.json", rc.name));
    report.write_json(&path)?;
    Ok((report, path))
}

/// Fails with the first failing check unless every check passes or is a
/// documented discrepancy.
pub fn verdict(report: &ResidualReport) -> Result<()> {
    match report.failures().next() {
        Some(first) => Err(CliError::VerificationFailed(format!(
            "{} (max {:e} > tolerance {:e})",
            first.name, first.max_abs, first.tolerance
        ))),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnchorRecord {
    pub u: [f64; 2],
    pub f: f64,
    pub g: f64,
    pub omega: f64,
    pub w: f64,
    pub s: f64,
    pub theta: f64,
    pub x: [f64; 4],
    pub n: [f64; 4],
    pub psi: [f64; 2],
    pub lambdas: Option<[f64; 2]>,
    pub margin: f64,
    pub congruence_point: [f64; 4],
}

pub fn anchor_record(rc: &RunConfig, u: ParamPoint) -> Result<AnchorRecord> {
    let rec = rc.surface.evaluate(u)?;
    let q = rc.surface.sphere_congruence_point(u)?;
    let v4 = |v: ribaucour_core::Vec4| [v[0], v[1], v[2], v[3]];
    Ok(AnchorRecord {
        u: [u.u1, u.u2],
        f: rec.scalars.f,
        g: rec.scalars.g,
        omega: rec.scalars.omega,
        w: rec.scalars.w,
        s: rec.scalars.s,
        theta: rec.scalars.theta,
        x: v4(rec.xt),
        n: v4(rec.nt),
        psi: rec.psi,
        lambdas: rec.lambdas,
        margin: rec.margin,
        congruence_point: v4(q),
    })
}

/// The resolved configuration with the origin's record under `"anchor"`.
/// Feeding the output back as `--config` reproduces the run.
pub fn run_info(rc: &RunConfig) -> Result<String> {
    let mut doc = rc.resolved.clone();
    let anchor = anchor_record(rc, ParamPoint::ORIGIN)?;
    doc.anchor = Some(serde_json::to_value(anchor).map_err(|e| CliError::Parse(e.to_string()))?);
    let mut text = serde_json::to_string_pretty(&doc).map_err(|e| CliError::Parse(e.to_string()))?;
    text.push('\n');
    Ok(text)
}
