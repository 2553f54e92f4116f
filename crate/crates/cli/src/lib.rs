//! Command-line front end: `generate`, `verify` and `info`.

pub mod commands;
pub mod config;
mod error;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::{run_generate, run_info, run_verify, verdict, VerifyOptions};
pub use config::{preset, FileConfig, GridJson, ProjectionJson, RunConfig, PRESET_NAMES};
pub use error::{CliError, Result};

#[derive(Debug, Parser)]
#[command(name = "ribaucour", version, about = "Flat surfaces in S³ from Ribaucour transforms of the flat torus")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample, mask and export a mesh.
    Generate {
        #[command(flatten)]
        common: Common,
        /// Also write the 4-D mesh with attributes as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Run the residual suite and completeness scan.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u32,
        /// Report only this check (repeatable); `printed-ntiu` and
        /// `printed-rotation` select the documented discrepancies.
        #[arg(long = "check")]
        checks: Vec<String>,
    },
    /// Print the resolved configuration and the record at the origin.
    Info {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, value_parser = PRESET_NAMES)]
    pub preset: Option<String>,
    /// JSON config file; its keys override the preset.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(short, long, default_value = ".")]
    pub output: PathBuf,
    /// `u1min,u1max,u2min,u2max,n1,n2`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_grid)]
    pub grid: Option<GridJson>,
    #[arg(long, value_parser = ["stereographic", "none"])]
    pub projection: Option<String>,
    /// `θ,φ` of the rotation applied before projecting.
    #[arg(long = "pre-rotate", allow_hyphen_values = true, value_parser = parse_pair)]
    pub pre_rotate: Option<[f64; 2]>,
    #[arg(long)]
    pub mask_threshold: Option<f64>,
    #[arg(long)]
    pub fd_step: Option<f64>,
    /// Worker threads; all cores by default.
    #[arg(long)]
    pub threads: Option<usize>,
}

fn parse_numbers(s: &str, n: usize) -> std::result::Result<Vec<f64>, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    if v.len() != n {
        return Err(format!("expected {n} comma-separated numbers, got {}", v.len()));
    }
    Ok(v)
}

fn parse_grid(s: &str) -> std::result::Result<GridJson, String> {
    let v = parse_numbers(s, 6)?;
    let count = |x: f64| {
        if x.fract() == 0.0 && x >= 0.0 && x <= u32::MAX as f64 {
            Ok(x as usize)
        } else {
            Err(format!("vertex count {x} is not a whole number"))
        }
    };
    Ok(GridJson {
        u1: [v[0], v[1]],
        u2: [v[2], v[3]],
        n: [count(v[4])?, count(v[5])?],
    })
}

fn parse_pair(s: &str) -> std::result::Result<[f64; 2], String> {
    let v = parse_numbers(s, 2)?;
    Ok([v[0], v[1]])
}

impl Common {
    fn overrides(&self) -> FileConfig {
        let projection = (self.projection.is_some() || self.pre_rotate.is_some()).then(|| ProjectionJson {
            kind: self.projection.clone(),
            pre_rotate: self.pre_rotate,
            pole_tol: None,
        });
        FileConfig {
            grid: self.grid,
            projection,
            mask_threshold: self.mask_threshold,
            fd_step: self.fd_step,
            ..FileConfig::default()
        }
    }

    /// Preset, then config file, then flags.
    pub fn resolve(&self, fallback_preset: Option<&str>) -> Result<RunConfig> {
        let name = self.preset.as_deref().or(if self.config.is_none() { fallback_preset } else { None });
        let mut file = match name {
            Some(n) => preset(n).ok_or_else(|| CliError::invalid("preset", format!("unknown preset {n:?}")))?.config,
            None if self.config.is_none() => {
                return Err(CliError::invalid("preset", "give --preset or --config"));
            }
            None => FileConfig::default(),
        };
        if let Some(path) = &self.config {
            file = file.overlay(FileConfig::load(path)?);
        }
        RunConfig::resolve(file.overlay(self.overrides()))
    }
}

fn dispatch(command: &Command, out: &mut dyn Write) -> Result<()> {
    let say = |out: &mut dyn Write, s: String| {
        // Output is best effort; a closed pipe is not a failed run.
        let _ = writeln!(out, "{s}");
    };
    match command {
        Command::Generate { common, json } => {
            let rc = common.resolve(None)?;
            let s = run_generate(&rc, &common.output, *json)?;
            for f in &s.files {
                say(out, format!("wrote {}", common.output.join(f).display()));
            }
            say(
                out,
                format!(
                    "{}: {} vertices, {} faces, {} masked ({:.3}%), {} components",
                    s.name,
                    s.mesh.vertices,
                    s.mesh.faces,
                    s.mesh.masked.total(),
                    100.0 * s.mesh.masked_fraction,
                    s.mesh.components
                ),
            );
        }
        Command::Verify {
            common,
            samples,
            seed,
            checks,
        } => {
            // The documented-discrepancy checks default to the fig1 preset.
            let fallback = (!checks.is_empty()).then_some("fig1");
            let rc = common.resolve(fallback)?;
            let opts = VerifyOptions {
                samples: *samples,
                seed: *seed,
                checks: checks.clone(),
            };
            let (report, path) = run_verify(&rc, &opts, &common.output)?;
            for c in &report.checks {
                say(
                    out,
                    format!(
                        "{:<30} {:<18} max {:>9.2e} tol {:>6.0e} n={} skipped={}",
                        c.name,
                        serde_json::to_value(c.status).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default(),
                        c.max_abs,
                        c.tolerance,
                        c.count,
                        c.skipped,
                    ),
                );
            }
            say(out, format!("wrote {}", path.display()));
            commands::verdict(&report)?;
        }
        Command::Info { common } => {
            let rc = common.resolve(None)?;
            let _ = out.write_all(run_info(&rc)?.as_bytes());
        }
    }
    Ok(())
}

/// Parses `args` (program name first), runs the command and returns the exit
/// status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    1
                }
            };
        }
    };
    let threads = match &cli.command {
        Command::Generate { common, .. } | Command::Verify { common, .. } | Command::Info { common } => common.threads,
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: thread pool: {e}");
            return 2;
        }
    };
    let mut buf = Vec::new();
    let result = pool.install(|| dispatch(&cli.command, &mut buf));
    let _ = out.write_all(&buf);
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
