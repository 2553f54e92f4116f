//! The seed flat torus, its adapted frame, and the block rotations of R⁴
//! that act on it by parameter translation.

use nalgebra::Vector4;

use crate::params::TorusParams;

pub type Vec4 = Vector4<f64>;

/// Curvature-line coordinates `(u1, u2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamPoint {
    pub u1: f64,
    pub u2: f64,
}

impl ParamPoint {
    pub const ORIGIN: ParamPoint = ParamPoint { u1: 0.0, u2: 0.0 };

    pub fn new(u1: f64, u2: f64) -> Self {
        Self { u1, u2 }
    }

    pub fn is_finite(&self) -> bool {
        self.u1.is_finite() && self.u2.is_finite()
    }

    /// Coordinate along `axis` (0 for `u1`, 1 for `u2`).
    pub fn coord(&self, axis: usize) -> f64 {
        match axis {
            0 => self.u1,
            1 => self.u2,
            _ => panic!("axis {axis} out of range"),
        }
    }

    /// This point moved by `delta` along `axis`.
    pub fn offset(&self, axis: usize, delta: f64) -> Self {
        match axis {
            0 => Self::new(self.u1 + delta, self.u2),
            1 => Self::new(self.u1, self.u2 + delta),
            _ => panic!("axis {axis} out of range"),
        }
    }
}

/// Position, normal and principal frame of the seed torus at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusFrame {
    pub x: Vec4,
    pub n: Vec4,
    pub e1: Vec4,
    pub e2: Vec4,
    /// Lamé coefficient `r1·r2` (same for both coordinates).
    pub a: f64,
    pub lambda1: f64,
    pub lambda2: f64,
}

impl TorusFrame {
    pub fn e(&self, axis: usize) -> Vec4 {
        if axis == 0 {
            self.e1
        } else {
            self.e2
        }
    }

    pub fn lambda(&self, axis: usize) -> f64 {
        if axis == 0 {
            self.lambda1
        } else {
            self.lambda2
        }
    }
}

/// `X(u) = (r1 cos(r2 u1), r1 sin(r2 u1), r2 cos(r1 u2), r2 sin(r1 u2))`.
pub fn torus_point(params: &TorusParams, u: ParamPoint) -> Vec4 {
    let (r1, r2) = (params.r1(), params.r2());
    let (s1, c1) = (r2 * u.u1).sin_cos();
    let (s2, c2) = (r1 * u.u2).sin_cos();
    Vec4::new(r1 * c1, r1 * s1, r2 * c2, r2 * s2)
}

/// The unit normal is oriented so that `dN(e_i) = λ_i e_i` with
/// `λ1 = −r2/r1`, `λ2 = r1/r2`.
pub fn torus_frame(params: &TorusParams, u: ParamPoint) -> TorusFrame {
    let (r1, r2) = (params.r1(), params.r2());
    let (s1, c1) = (r2 * u.u1).sin_cos();
    let (s2, c2) = (r1 * u.u2).sin_cos();
    let [lambda1, lambda2] = params.lambdas();
    TorusFrame {
        x: Vec4::new(r1 * c1, r1 * s1, r2 * c2, r2 * s2),
        n: Vec4::new(-r2 * c1, -r2 * s1, r1 * c2, r1 * s2),
        e1: Vec4::new(-s1, c1, 0.0, 0.0),
        e2: Vec4::new(0.0, 0.0, -s2, c2),
        a: params.lame(),
        lambda1,
        lambda2,
    }
}

/// Rotation by `theta` in the `(x1, x2)` plane and `phi` in the `(x3, x4)` plane.
pub fn rotation_rtp(theta: f64, phi: f64, p: &Vec4) -> Vec4 {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    Vec4::new(
        p[0] * ct - p[1] * st,
        p[0] * st + p[1] * ct,
        p[2] * cp - p[3] * sp,
        p[2] * sp + p[3] * cp,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fig1() -> TorusParams {
        TorusParams::new(0.6).unwrap()
    }

    fn assert_vec(a: &Vec4, b: [f64; 4], tol: f64) {
        for i in 0..4 {
            assert!((a[i] - b[i]).abs() <= tol, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn torus_point_anchors() {
        let p = fig1();
        assert_vec(&torus_point(&p, ParamPoint::ORIGIN), [0.6, 0.0, 0.8, 0.0], 1e-15);
        let quarter = ParamPoint::new(std::f64::consts::PI / (2.0 * 0.8), 0.0);
        assert_vec(&torus_point(&p, quarter), [0.0, 0.6, 0.8, 0.0], 1e-15);
    }

    #[test]
    fn frame_at_origin() {
        let f = torus_frame(&fig1(), ParamPoint::ORIGIN);
        assert_vec(&f.e1, [0.0, 1.0, 0.0, 0.0], 0.0);
        assert_vec(&f.e2, [0.0, 0.0, 0.0, 1.0], 0.0);
        assert_vec(&f.n, [-0.8, 0.0, 0.6, 0.0], 1e-16);
        assert!((f.a - 0.48).abs() < 1e-16);
        assert_eq!(f.lambda1 * f.lambda2, -1.0);
    }

    #[test]
    fn normal_derivative_along_u1_is_lambda1_e1() {
        let p = fig1();
        let h = 1e-5;
        let u = ParamPoint::new(0.37, -1.2);
        let fr = torus_frame(&p, u);
        let np = torus_frame(&p, u.offset(0, h)).n;
        let nm = torus_frame(&p, u.offset(0, -h)).n;
        let dn = (np - nm) / (2.0 * h) / fr.a;
        let expect = fr.e1 * fr.lambda1;
        assert!((dn - expect).amax() < 1e-6, "{dn:?} vs {expect:?}");
    }

    #[test]
    fn rotation_identity() {
        let v = Vec4::new(0.1, -0.2, 0.3, 0.4);
        assert_eq!(rotation_rtp(0.0, 0.0, &v), v);
    }

    proptest! {
        #[test]
        fn frame_is_orthonormal(u1 in -50.0f64..50.0, u2 in -50.0f64..50.0, r1 in 0.05f64..0.95) {
            let p = TorusParams::new(r1).unwrap();
            let f = torus_frame(&p, ParamPoint::new(u1, u2));
            let vs = [f.x, f.n, f.e1, f.e2];
            for i in 0..4 {
                for j in 0..4 {
                    let expect = if i == j { 1.0 } else { 0.0 };
                    prop_assert!((vs[i].dot(&vs[j]) - expect).abs() < 1e-14);
                }
            }
        }

        #[test]
        fn torus_is_periodic(u1 in -20.0f64..20.0, u2 in -20.0f64..20.0) {
            let p = fig1();
            let u = ParamPoint::new(u1, u2);
            let shifted = ParamPoint::new(u1 + 2.0 * std::f64::consts::PI / p.r2(), u2);
            prop_assert!((torus_point(&p, u) - torus_point(&p, shifted)).amax() < 1e-13);
        }

        #[test]
        fn rotation_translates_torus(u1 in -5.0f64..5.0, u2 in -5.0f64..5.0, t in -3.0f64..3.0, s in -3.0f64..3.0) {
            let p = fig1();
            let rotated = rotation_rtp(p.r2() * t, p.r1() * s, &torus_point(&p, ParamPoint::new(u1, u2)));
            let moved = torus_point(&p, ParamPoint::new(u1 + t, u2 + s));
            prop_assert!((rotated - moved).amax() < 1e-14);
        }

        #[test]
        fn rotation_is_an_isometry(x in prop::array::uniform4(-10.0f64..10.0), t in -7.0f64..7.0, s in -7.0f64..7.0) {
            let v = Vec4::from(x);
            let n0 = v.norm();
            prop_assert!((rotation_rtp(t, s, &v).norm() - n0).abs() <= 1e-15 * n0.max(1.0));
        }
    }
}
