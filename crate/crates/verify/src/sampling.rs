//! Deterministic sample points over a parameter rectangle.

use ribaucour_core::ParamPoint;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Rect {
    pub u1: [f64; 2],
    pub u2: [f64; 2],
}

impl Rect {
    pub fn new(u1: [f64; 2], u2: [f64; 2]) -> Self {
        Rect { u1, u2 }
    }

    pub fn square(half: f64) -> Self {
        Rect::new([-half, half], [-half, half])
    }

    pub fn contains(&self, u: ParamPoint) -> bool {
        (self.u1[0]..=self.u1[1]).contains(&u.u1) && (self.u2[0]..=self.u2[1]).contains(&u.u2)
    }

    fn lerp(range: [f64; 2], t: f64) -> f64 {
        range[0] + (range[1] - range[0]) * t
    }
}

/// `n` points of an Owen-scrambled Sobol sequence mapped onto `rect`. The
/// sequence is fixed by `seed`.
pub fn sobol_points(rect: &Rect, n: usize, seed: u32) -> Vec<ParamPoint> {
    (0..n as u32)
        .map(|i| {
            let t1 = f64::from(sobol_burley::sample(i, 0, seed));
            let t2 = f64::from(sobol_burley::sample(i, 1, seed));
            ParamPoint::new(Rect::lerp(rect.u1, t1), Rect::lerp(rect.u2, t2))
        })
        .collect()
}
