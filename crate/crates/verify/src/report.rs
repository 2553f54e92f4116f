//! Residual aggregation and the JSON report.

use std::path::Path;

use ribaucour_core::ParamPoint;
use serde::Serialize;

use crate::error::Result;
use crate::scan::CompletenessScan;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// The check is expected to fail; it documents a formula that is known to
    /// be wrong and does not affect the overall verdict.
    KnownDiscrepancy,
}

/// One residual at one sample point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    pub name: &'static str,
    pub value: f64,
    pub tolerance: f64,
}

impl Residual {
    pub fn new(name: &'static str, value: f64, tolerance: f64) -> Self {
        Residual { name, value, tolerance }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckSummary {
    pub name: String,
    pub count: usize,
    pub skipped: usize,
    pub max_abs: f64,
    pub mean_abs: f64,
    pub argmax: Option<[f64; 2]>,
    pub tolerance: f64,
    pub pass: bool,
    pub status: Status,
}

#[derive(Debug, Clone)]
struct Accumulator {
    name: String,
    tolerance: f64,
    count: usize,
    skipped: usize,
    max_abs: f64,
    sum_abs: f64,
    argmax: Option<ParamPoint>,
    known_discrepancy: bool,
}

impl Accumulator {
    fn new(name: &str, tolerance: f64) -> Self {
        Accumulator {
            name: name.to_owned(),
            tolerance,
            count: 0,
            skipped: 0,
            max_abs: 0.0,
            sum_abs: 0.0,
            argmax: None,
            known_discrepancy: false,
        }
    }

    fn push(&mut self, u: ParamPoint, value: f64) {
        // NaN compares false everywhere, so map it to +inf to keep it visible.
        let a = if value.is_nan() { f64::INFINITY } else { value.abs() };
        self.count += 1;
        self.sum_abs += a;
        if self.argmax.is_none() || a > self.max_abs {
            self.max_abs = a;
            self.argmax = Some(u);
        }
    }

    fn finish(&self) -> CheckSummary {
        let pass = self.count > 0 && self.max_abs <= self.tolerance;
        let status = if self.known_discrepancy {
            Status::KnownDiscrepancy
        } else if pass {
            Status::Pass
        } else {
            Status::Fail
        };
        CheckSummary {
            name: self.name.clone(),
            count: self.count,
            skipped: self.skipped,
            max_abs: self.max_abs,
            mean_abs: if self.count > 0 { self.sum_abs / self.count as f64 } else { 0.0 },
            argmax: self.argmax.map(|u| [u.u1, u.u2]),
            tolerance: self.tolerance,
            pass,
            status,
        }
    }
}

/// Sequential fold of per-point residuals into per-check summaries. Feeding
/// points in a fixed order makes the sums, and so the whole report,
/// reproducible bit for bit.
#[derive(Debug, Clone, Default)]
pub struct ReportBuilder {
    checks: Vec<Accumulator>,
}

impl ReportBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn entry(&mut self, name: &str, tolerance: f64) -> &mut Accumulator {
        match self.checks.iter().position(|c| c.name == name) {
            Some(i) => &mut self.checks[i],
            None => {
                self.checks.push(Accumulator::new(name, tolerance));
                self.checks.last_mut().unwrap()
            }
        }
    }

    /// Declares a check up front so that it appears, with its skips, even if
    /// no point produced a value.
    pub fn declare(&mut self, name: &str, tolerance: f64) {
        self.entry(name, tolerance);
    }

    pub fn mark_known_discrepancy(&mut self, name: &str) {
        if let Some(c) = self.checks.iter_mut().find(|c| c.name == name) {
            c.known_discrepancy = true;
        }
    }

    pub fn record(&mut self, u: ParamPoint, rows: &[Residual]) {
        for r in rows {
            self.entry(r.name, r.tolerance).push(u, r.value);
        }
    }

    pub fn skip(&mut self, names: &[&str]) {
        for name in names {
            if let Some(c) = self.checks.iter_mut().find(|c| c.name == *name) {
                c.skipped += 1;
            }
        }
    }

    pub fn finish(&self) -> Vec<CheckSummary> {
        self.checks.iter().map(Accumulator::finish).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub checks: Vec<CheckSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scan: Option<CompletenessScan>,
}

impl ResidualReport {
    pub fn check(&self, name: &str) -> Option<&CheckSummary> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Checks that fail and are not documented discrepancies.
    pub fn failures(&self) -> impl Iterator<Item = &CheckSummary> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        let mut text = self.to_json()?;
        text.push('\n');
        std::fs::write(path, text)?;
        Ok(())
    }
}
