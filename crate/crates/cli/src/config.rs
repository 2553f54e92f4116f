//! Run configuration: presets, the JSON config file, and flag overrides.

use std::path::Path;

use ribaucour_core::{Family, GeneratorConfig, ParamPoint, RibaucourSurface, Sign, TorusParams};
use ribaucour_mesh::{GridSpec, ProjectionKind, ProjectionSpec, DEFAULT_MASK_THRESHOLD};
use ribaucour_verify::FDConfig;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridJson {
    pub u1: [f64; 2],
    pub u2: [f64; 2],
    pub n: [usize; 2],
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectionJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pre_rotate: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pole_tol: Option<f64>,
}

/// The config file schema. Every key is optional so that files, presets and
/// flags can be layered.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub projection: Option<ProjectionJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mask_threshold: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fd_step: Option<f64>,
    /// Written by `info`; ignored on input.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub anchor: Option<serde_json::Value>,
}

impl FileConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    /// `other`'s keys win where set.
    pub fn overlay(self, other: FileConfig) -> FileConfig {
        let projection = match (self.projection, other.projection) {
            (Some(a), Some(b)) => Some(ProjectionJson {
                kind: b.kind.or(a.kind),
                pre_rotate: b.pre_rotate.or(a.pre_rotate),
                pole_tol: b.pole_tol.or(a.pole_tol),
            }),
            (a, b) => b.or(a),
        };
        FileConfig {
            name: other.name.or(self.name),
            r1: other.r1.or(self.r1),
            c: other.c.or(self.c),
            family: other.family.or(self.family),
            a1: other.a1.or(self.a1),
            a2: other.a2.or(self.a2),
            b1: other.b1.or(self.b1),
            b2: other.b2.or(self.b2),
            eps1: other.eps1.or(self.eps1),
            eps2: other.eps2.or(self.eps2),
            grid: other.grid.or(self.grid),
            projection,
            mask_threshold: other.mask_threshold.or(self.mask_threshold),
            fd_step: other.fd_step.or(self.fd_step),
            anchor: None,
        }
    }
}

/// A named figure configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub config: FileConfig,
    pub description: &'static str,
}

pub const PRESET_NAMES: [&str; 6] = ["fig1", "fig2", "fig3a", "fig3b", "fig4a", "fig4b"];

const RANGE_NOTE: &str = "parameter rectangle chosen to show the near-singular region; not canonical";

pub fn preset(name: &str) -> Option<Preset> {
    let near = GridJson {
        u1: [-2.0, 2.0],
        u2: [-2.5, 2.5],
        n: [400, 400],
    };
    let far = GridJson {
        u1: [-60.0, 60.0],
        u2: [-60.0, 60.0],
        n: [400, 400],
    };
    let base = |c: f64, family: &str, grid: GridJson| FileConfig {
        name: Some(name.to_owned()),
        r1: Some(0.6),
        c: Some(c),
        family: Some(family.to_owned()),
        grid: Some(grid),
        ..FileConfig::default()
    };
    let exp = |eps2: f64| FileConfig {
        a1: Some(1.0),
        b1: Some(1.0),
        eps1: Some(1.0),
        eps2: Some(eps2),
        ..base(1e-3, "exp", far)
    };
    let (config, description) = match name {
        "fig1" => (base(4.0, "cosh-sinh", near), "f = cosh(8u1/5), g = (4/3) sinh(6u2/5)"),
        "fig2" => (base(4.0, "sinh-cosh", near), "f = sinh(8u1/5), g = (4/3) cosh(6u2/5)"),
        "fig3a" => (base(1e-3, "cosh-sinh", far), "cosh/sinh generators with c = 1/1000"),
        "fig3b" => (base(1e-3, "sinh-cosh", far), "sinh/cosh generators with c = 1/1000"),
        "fig4a" => (exp(1.0), "exponential generators, a1 = b1 = 1, eps = (+1, +1)"),
        "fig4b" => (exp(-1.0), "exponential generators, a1 = b1 = 1, eps = (+1, -1)"),
        _ => return None,
    };
    let name = PRESET_NAMES.iter().find(|n| **n == name)?;
    Some(Preset {
        name,
        config,
        description,
    })
}

pub fn preset_note() -> &'static str {
    RANGE_NOTE
}

/// A fully resolved and validated configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub name: String,
    /// Every key filled in; what `info` prints and the summary echoes.
    pub resolved: FileConfig,
    pub surface: RibaucourSurface,
    pub grid: GridSpec,
    pub projection: ProjectionSpec,
    pub mask_threshold: f64,
    pub fd: FDConfig,
    /// Extra verification anchors besides the origin.
    pub anchors: Vec<ParamPoint>,
}

fn need(v: Option<f64>, key: &str) -> Result<f64> {
    v.ok_or_else(|| CliError::invalid(key, "missing"))
}

fn sign(v: Option<f64>, key: &str) -> Result<Sign> {
    Sign::from_value(v.unwrap_or(1.0)).ok_or_else(|| CliError::invalid(key, "must be 1 or -1"))
}

fn family(file: &FileConfig) -> Result<Family> {
    let name = file.family.as_deref().ok_or_else(|| CliError::invalid("family", "missing"))?;
    Ok(match name {
        "cosh-sinh" => Family::CoshSinh,
        "sinh-cosh" => Family::SinhCosh,
        "exp" => Family::Exp {
            a1: need(file.a1, "a1")?,
            b1: need(file.b1, "b1")?,
            eps1: sign(file.eps1, "eps1")?,
            eps2: sign(file.eps2, "eps2")?,
        },
        "general" => Family::General {
            a1: need(file.a1, "a1")?,
            a2: need(file.a2, "a2")?,
            b1: need(file.b1, "b1")?,
            b2: need(file.b2, "b2")?,
        },
        other => {
            return Err(CliError::invalid(
                "family",
                format!("unknown family {other:?}; expected cosh-sinh, sinh-cosh, exp or general"),
            ))
        }
    })
}

/// Keys of the family other than `family` itself.
fn family_keys(file: &FileConfig, fam: &Family) -> FileConfig {
    let keep = |k: &str| match fam {
        Family::Exp { .. } => ["a1", "b1", "eps1", "eps2"].contains(&k),
        Family::General { .. } => ["a1", "a2", "b1", "b2"].contains(&k),
        _ => false,
    };
    let pick = |k: &str, v: Option<f64>| if keep(k) { v } else { None };
    let eps = |k: &str, v: Option<f64>| pick(k, Some(v.unwrap_or(1.0)));
    FileConfig {
        a1: pick("a1", file.a1),
        a2: pick("a2", file.a2),
        b1: pick("b1", file.b1),
        b2: pick("b2", file.b2),
        eps1: eps("eps1", file.eps1),
        eps2: eps("eps2", file.eps2),
        ..FileConfig::default()
    }
}

/// Zeros of the singularity margin on the coordinate axis through the origin
/// along which the odd generator varies, from the quadratics `Q1 = 0` and
/// `Q2 = 0` with the even generator at its minimum.
pub fn axis_roots(params: TorusParams, c: f64, fam: &Family) -> Vec<ParamPoint> {
    let (r1, r2) = (params.r1(), params.r2());
    match fam {
        Family::CoshSinh => [(r2 + 1.0) / r1, (r2 - 1.0) / r1, (1.0 - r1) / r2, -(1.0 + r1) / r2]
            .iter()
            .map(|s| ParamPoint::new(0.0, s.asinh() / (r1 * c.sqrt())))
            .collect(),
        Family::SinhCosh => [(1.0 - r2) / r1, -(1.0 + r2) / r1, (r1 + 1.0) / r2, (r1 - 1.0) / r2]
            .iter()
            .map(|s| ParamPoint::new(s.asinh() / (r2 * c.sqrt()), 0.0))
            .collect(),
        _ => Vec::new(),
    }
}

impl RunConfig {
    pub fn resolve(file: FileConfig) -> Result<Self> {
        let r1 = need(file.r1, "r1")?;
        let c = need(file.c, "c")?;
        let fam = family(&file)?;
        let params = TorusParams::new(r1)?;
        let surface = RibaucourSurface::new(params, GeneratorConfig::new(c, fam))?;

        let grid_json = file.grid.unwrap_or_else(|| {
            // Generators vary on the length scale 1/√c.
            let s = c.sqrt();
            GridJson {
                u1: [-4.0 / s, 4.0 / s],
                u2: [-5.0 / s, 5.0 / s],
                n: [400, 400],
            }
        });
        let grid = GridSpec::new(grid_json.u1, grid_json.u2, grid_json.n)?;

        let pj = file.projection.clone().unwrap_or_default();
        let kind = match pj.kind.as_deref().unwrap_or("stereographic") {
            "stereographic" => ProjectionKind::Stereographic,
            "none" => ProjectionKind::None,
            other => {
                return Err(CliError::invalid(
                    "projection.kind",
                    format!("{other:?}; expected stereographic or none"),
                ))
            }
        };
        let pre = pj.pre_rotate.unwrap_or([0.0, 0.0]);
        let pole_tol = pj.pole_tol.unwrap_or(ProjectionSpec::DEFAULT_POLE_TOLERANCE);
        let projection = ProjectionSpec::new(kind, (pre[0], pre[1]), pole_tol)
            .map_err(|e| CliError::invalid("projection.pole_tol", e.to_string()))?;

        let mask_threshold = file.mask_threshold.unwrap_or(DEFAULT_MASK_THRESHOLD);
        if !(mask_threshold >= 0.0 && mask_threshold.is_finite()) {
            return Err(CliError::invalid("mask_threshold", "must be a finite non-negative number"));
        }
        let fd_step = file.fd_step.unwrap_or(FDConfig::DEFAULT_STEP);
        let fd = FDConfig::new(fd_step, true).map_err(|e| CliError::invalid("fd_step", e.to_string()))?;

        let name = file.name.clone().unwrap_or_else(|| "surface".to_owned());
        if name.is_empty() || name.contains(['/', '\\']) {
            return Err(CliError::invalid("name", "must be a plain file stem"));
        }

        let anchors = axis_roots(params, c, &fam);

        let resolved = FileConfig {
            name: Some(name.clone()),
            r1: Some(r1),
            c: Some(c),
            family: file.family.clone(),
            grid: Some(grid_json),
            projection: Some(ProjectionJson {
                kind: Some(if kind == ProjectionKind::None { "none" } else { "stereographic" }.to_owned()),
                pre_rotate: Some(pre),
                pole_tol: Some(pole_tol),
            }),
            mask_threshold: Some(mask_threshold),
            fd_step: Some(fd_step),
            ..family_keys(&file, &fam)
        };
        Ok(RunConfig {
            name,
            resolved,
            surface,
            grid,
            projection,
            mask_threshold,
            fd,
            anchors,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fig1_from_json() {
        let f = FileConfig::from_json(r#"{"r1":0.6,"c":4,"family":"cosh-sinh"}"#).unwrap();
        let rc = RunConfig::resolve(f).unwrap();
        assert_eq!(rc.surface.config().family(), Family::CoshSinh);
        assert_eq!(rc.grid.u1, [-2.0, 2.0]);
        assert_eq!(rc.grid.u2, [-2.5, 2.5]);
        assert_eq!(rc.anchors.len(), 4);
        assert!(rc.anchors.iter().any(|u| (u.u2 - 3f64.asinh() / 1.2).abs() < 1e-15));
    }

    #[test]
    fn axis_roots_are_zeros_of_the_margin() {
        for family in ["cosh-sinh", "sinh-cosh"] {
            for (r1, c) in [(0.6, 4.0), (0.3, 0.5)] {
                let f = FileConfig {
                    r1: Some(r1),
                    c: Some(c),
                    family: Some(family.to_owned()),
                    ..FileConfig::default()
                };
                let rc = RunConfig::resolve(f).unwrap();
                assert_eq!(rc.anchors.len(), 4);
                for u in &rc.anchors {
                    let m = rc.surface.singularity_margin(*u).unwrap();
                    assert!(m.abs() < 1e-13, "{family} {u:?} {m}");
                }
            }
        }
    }

    #[test]
    fn fig4_from_json() {
        let f = FileConfig::from_json(r#"{"r1":0.6,"c":0.001,"family":"exp","a1":1,"b1":1,"eps1":1,"eps2":1}"#)
            .unwrap();
        let rc = RunConfig::resolve(f).unwrap();
        assert!(matches!(rc.surface.config().family(), Family::Exp { a1, b1, .. } if a1 == 1.0 && b1 == 1.0));
    }

    #[test]
    fn errors_name_the_key() {
        let bad = |json: &str| RunConfig::resolve(FileConfig::from_json(json).unwrap()).unwrap_err().to_string();
        assert!(bad(r#"{"r1":0.6,"c":-1,"family":"cosh-sinh"}"#).contains("`c`"));
        assert!(bad(r#"{"r1":1.2,"c":1,"family":"cosh-sinh"}"#).contains("`r1`"));
        assert!(bad(r#"{"r1":0.6,"c":1,"family":"exp","a1":1}"#).contains("`b1`"));
        assert!(bad(r#"{"r1":0.6,"c":1,"family":"exp","a1":1,"b1":1,"eps1":2}"#).contains("`eps1`"));
        assert!(bad(r#"{"r1":0.6,"c":1,"family":"spiral"}"#).contains("`family`"));
        assert!(bad(r#"{"r1":0.6,"c":1,"family":"cosh-sinh","fd_step":1}"#).contains("`fd_step`"));
        assert!(bad(r#"{"r1":0.6,"c":1,"family":"cosh-sinh","projection":{"kind":"ortho"}}"#)
            .contains("`projection.kind`"));
        assert!(FileConfig::from_json(r#"{"r1":0.6,"radius":2}"#).is_err());
    }

    #[test]
    fn presets_match_their_figures() {
        for name in PRESET_NAMES {
            let p = preset(name).unwrap();
            let rc = RunConfig::resolve(p.config).unwrap();
            let params = rc.surface.config().params();
            assert_eq!((params.r1(), params.r2()), (0.6, 0.8));
            assert_eq!(rc.name, name);
        }
        assert!(preset("fig5").is_none());
        // fig2: f = sinh(8u1/5), g = (4/3) cosh(6u2/5).
        let rc = RunConfig::resolve(preset("fig2").unwrap().config).unwrap();
        let v = rc.surface.generators(ParamPoint::new(0.7, -0.4)).unwrap();
        assert!((v.f - (8.0 * 0.7 / 5.0f64).sinh()).abs() < 1e-15);
        assert!((v.g - 4.0 / 3.0 * (6.0 * -0.4 / 5.0f64).cosh()).abs() < 1e-15);
    }

    #[test]
    fn overlay_prefers_the_upper_layer() {
        let base = preset("fig1").unwrap().config;
        let top = FileConfig {
            c: Some(2.0),
            projection: Some(ProjectionJson {
                pre_rotate: Some([0.1, 0.2]),
                ..ProjectionJson::default()
            }),
            ..FileConfig::default()
        };
        let m = base.overlay(top);
        assert_eq!((m.r1, m.c), (Some(0.6), Some(2.0)));
        assert_eq!(m.projection.unwrap().pre_rotate, Some([0.1, 0.2]));
    }
}
