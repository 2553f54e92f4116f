//! Grid scan of the metric coefficients: lower bounds, behaviour at the ends
//! of the coordinate lines, and the empirical singular set.

use rayon::prelude::*;
use ribaucour_core::{CurvatureLineSurface, ParamPoint};
use serde::Serialize;

use crate::error::Result;

/// At most this many near-singular sample locations are listed; the count is
/// always complete.
pub const MAX_LISTED_SAMPLES: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanGrid {
    pub u1: [f64; 2],
    pub u2: [f64; 2],
    pub n: [usize; 2],
}

impl ScanGrid {
    pub fn new(u1: [f64; 2], u2: [f64; 2], n: [usize; 2]) -> Self {
        ScanGrid { u1, u2, n }
    }

    fn coord(range: [f64; 2], n: usize, i: usize) -> f64 {
        if i + 1 == n {
            range[1]
        } else {
            range[0] + (range[1] - range[0]) * i as f64 / (n - 1) as f64
        }
    }

    pub fn point(&self, i: usize, j: usize) -> ParamPoint {
        ParamPoint::new(Self::coord(self.u1, self.n[0], i), Self::coord(self.u2, self.n[1], j))
    }

    fn is_valid(&self) -> bool {
        let ok = |r: [f64; 2]| r[0].is_finite() && r[1].is_finite() && r[1] > r[0];
        ok(self.u1) && ok(self.u2) && self.n[0] >= 2 && self.n[1] >= 2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Located {
    pub value: f64,
    pub at: [f64; 2],
}

/// `max over u1 = ±U of | |ψi(u1, u2)| − r1r2 |` along one coordinate line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AxialRow {
    pub u2: f64,
    pub deviation: [f64; 2],
}

/// `| |ψi| − r1r2 |` where a ray from the origin leaves the grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiagonalRay {
    pub direction: [f64; 2],
    pub at: [f64; 2],
    pub deviation: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SingularSet {
    pub threshold: f64,
    /// Grid vertices with `|margin| < threshold`.
    pub count: usize,
    pub samples: Vec<[f64; 2]>,
    /// Zeros of the margin on the vertical grid lines, located by bisection.
    pub roots: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompletenessScan {
    pub grid: ScanGrid,
    pub lame: f64,
    pub min_abs_psi: Option<[Located; 2]>,
    pub axial: Vec<AxialRow>,
    pub max_axial_deviation: [f64; 2],
    /// Informational only: along diagonals `f` and `g` grow together and no
    /// limit is claimed.
    pub diagonal: Vec<DiagonalRay>,
    pub singular: SingularSet,
    /// Vertices where evaluation failed.
    pub skipped: usize,
}

/// `| |ψi(±extent, u2)| − r1r2 |`, the larger of the two ends.
pub fn axial_deviation(surface: &dyn CurvatureLineSurface, u2: f64, extent: [f64; 2]) -> Result<[f64; 2]> {
    let a = surface.params().lame();
    let mut dev = [0.0f64; 2];
    for u1 in extent {
        let psi = surface.metric(ParamPoint::new(u1, u2))?;
        for k in 0..2 {
            dev[k] = dev[k].max((psi[k].abs() - a).abs());
        }
    }
    Ok(dev)
}

/// Bisection for a sign change of the margin between `lo` and `hi` on a
/// vertical line.
fn bisect(surface: &dyn CurvatureLineSurface, u1: f64, mut lo: f64, mut hi: f64) -> Option<f64> {
    let margin = |u2| surface.margin(ParamPoint::new(u1, u2)).ok();
    let mut m_lo = margin(lo)?;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let m = margin(mid)?;
        if m == 0.0 {
            return Some(mid);
        }
        if (m < 0.0) == (m_lo < 0.0) {
            lo = mid;
            m_lo = m;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

type Sample = Option<(f64, [f64; 2])>;

pub fn completeness_scan(surface: &dyn CurvatureLineSurface, grid: &ScanGrid, threshold: f64) -> CompletenessScan {
    let a = surface.params().lame();
    let [n1, n2] = grid.n;
    let valid = grid.is_valid();

    // Rows of (margin, ψ), row-major in u2 then u1.
    let rows: Vec<Vec<Sample>> = if valid {
        (0..n2)
            .into_par_iter()
            .map(|j| {
                (0..n1)
                    .map(|i| {
                        let u = grid.point(i, j);
                        let m = surface.margin(u).ok()?;
                        let psi = surface.metric(u).ok()?;
                        (m.is_finite() && psi.iter().all(|p| p.is_finite())).then_some((m, psi))
                    })
                    .collect()
            })
            .collect()
    } else {
        Vec::new()
    };

    let mut min_abs: Option<[Located; 2]> = None;
    let mut singular = SingularSet {
        threshold,
        count: 0,
        samples: Vec::new(),
        roots: Vec::new(),
    };
    let mut skipped = 0;
    for (j, row) in rows.iter().enumerate() {
        for (i, s) in row.iter().enumerate() {
            let Some((m, psi)) = s else {
                skipped += 1;
                continue;
            };
            let u = grid.point(i, j);
            let at = [u.u1, u.u2];
            let cur = min_abs.get_or_insert([Located { value: f64::INFINITY, at }; 2]);
            for k in 0..2 {
                if psi[k].abs() < cur[k].value {
                    cur[k] = Located { value: psi[k].abs(), at };
                }
            }
            if m.abs() < threshold {
                singular.count += 1;
                if singular.samples.len() < MAX_LISTED_SAMPLES {
                    singular.samples.push(at);
                }
            }
        }
    }

    for i in 0..rows.first().map_or(0, Vec::len) {
        for j in 0..rows.len() {
            let Some((m0, _)) = rows[j][i] else { continue };
            let u = grid.point(i, j);
            if m0 == 0.0 {
                singular.roots.push([u.u1, u.u2]);
                continue;
            }
            let Some(Some((m1, _))) = rows.get(j + 1).map(|r| r[i]) else { continue };
            if m1 != 0.0 && (m0 < 0.0) != (m1 < 0.0) {
                if let Some(r) = bisect(surface, u.u1, u.u2, grid.point(i, j + 1).u2) {
                    singular.roots.push([u.u1, r]);
                }
            }
        }
    }

    let mut axial = Vec::new();
    let mut max_axial = [0.0f64; 2];
    if valid {
        for j in 0..n2 {
            let u2 = grid.point(0, j).u2;
            if let Ok(dev) = axial_deviation(surface, u2, grid.u1) {
                for k in 0..2 {
                    max_axial[k] = max_axial[k].max(dev[k]);
                }
                axial.push(AxialRow { u2, deviation: dev });
            }
        }
    }

    let mut diagonal = Vec::new();
    if valid {
        for direction in [[1.0, 1.0], [1.0, -1.0], [-1.0, 1.0], [-1.0, -1.0]] {
            let reach = |d: f64, r: [f64; 2]| if d > 0.0 { r[1] } else { -r[0] };
            let t = reach(direction[0], grid.u1).min(reach(direction[1], grid.u2));
            if t <= 0.0 {
                continue;
            }
            let u = ParamPoint::new(direction[0] * t, direction[1] * t);
            if let Ok(psi) = surface.metric(u) {
                diagonal.push(DiagonalRay {
                    direction,
                    at: [u.u1, u.u2],
                    deviation: [(psi[0].abs() - a).abs(), (psi[1].abs() - a).abs()],
                });
            }
        }
    }

    CompletenessScan {
        grid: *grid,
        lame: a,
        min_abs_psi: min_abs,
        axial,
        max_axial_deviation: max_axial,
        diagonal,
        singular,
        skipped,
    }
}
