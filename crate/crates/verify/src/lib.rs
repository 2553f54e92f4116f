//! Numerical oracles for the closed-form surfaces: finite differences of
//! position and normal, intrinsic curvature from the metric, the scalar linear
//! system, and grid scans of the singular set.

pub mod checks;
mod error;
pub mod fd;
pub mod report;
pub mod sampling;
pub mod scan;
pub mod suite;

pub use checks::{check_flatness, check_ribaucour_system, check_surface_point, FlatnessSample, Tolerances};
pub use error::{Result, VerifyError};
pub use fd::{central_diff, FDConfig};
pub use report::{CheckSummary, ReportBuilder, Residual, ResidualReport, Status};
pub use sampling::{sobol_points, Rect};
pub use scan::{axial_deviation, completeness_scan, CompletenessScan, ScanGrid};
pub use suite::{run_suite, SuiteConfig};
