//! Pointwise sub-Riemannian quantities of a rotationally invariant surface,
//! computed from its profile curve s ↦ (x(s), t(s)).
//!
//! Conventions: profiles are parametrized counterclockwise with x > 0 on the
//! open interior. Writing q = ṫ² + x²ẋ² and κ = ẋẗ − ẍṫ, the fundamental
//! function, horizontal mean curvature and area density are
//!
//!   α = −ẋ / √q,
//!   H = (x³κ + ṫ³) / (x q^{3/2}),
//!   dσ/(ds dθ) = x √q,
//!
//! and the frame fields J(ν_h), S expand in the coordinate frame (∂_s, ∂_θ)
//! with the coefficients returned by [`frame_coefficients`]. Points with
//! q below [`TOL_DENOM`] (or x ≤ 0) are treated as characteristic.

use crate::error::{Error, Result};
use crate::numerics::diff;
use crate::numerics::jet::Jet2;
use std::sync::Arc;

/// Absolute threshold on ṫ² + x²ẋ² below which a point counts as
/// characteristic (double-precision quadratic vanishing).
pub const TOL_DENOM: f64 = 1e-12;

/// Position and derivatives of a profile curve at one parameter value:
/// `x[k]` is the k-th derivative of x, `t[k]` of t, for k = 0..=3.
#[derive(Clone, Copy, Debug, Default)]
pub struct CurveJet {
    pub x: [f64; 4],
    pub t: [f64; 4],
}

/// The coordinate evaluation backing a [`ProfileCurve`].
pub trait ProfileFn: Send + Sync {
    /// Derivatives through second order (the `[3]` slots may be zero).
    fn eval2(&self, s: f64) -> CurveJet;

    /// Derivatives through third order.
    fn eval3(&self, s: f64) -> CurveJet;
}

/// A smooth regular planar curve generating a surface of revolution.
#[derive(Clone)]
pub struct ProfileCurve {
    domain: (f64, f64),
    characteristic_endpoints: (bool, bool),
    f: Arc<dyn ProfileFn>,
}

impl std::fmt::Debug for ProfileCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ProfileCurve")
            .field("domain", &self.domain)
            .field("characteristic_endpoints", &self.characteristic_endpoints)
            .finish()
    }
}

impl ProfileCurve {
    pub fn new(
        domain: (f64, f64),
        characteristic_endpoints: (bool, bool),
        f: Arc<dyn ProfileFn>,
    ) -> Self {
        ProfileCurve {
            domain,
            characteristic_endpoints,
            f,
        }
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn domain_length(&self) -> f64 {
        self.domain.1 - self.domain.0
    }

    pub fn characteristic_endpoints(&self) -> (bool, bool) {
        self.characteristic_endpoints
    }

    /// A profile generates a closed surface when it degenerates onto the
    /// rotation axis at both ends.
    pub fn is_closed(&self) -> bool {
        self.characteristic_endpoints.0 && self.characteristic_endpoints.1
    }

    /// Coordinates and derivatives at `s`; `order` ≤ 2 skips the third
    /// derivative (cheaper for perturbed profiles).
    pub fn eval(&self, s: f64, order: usize) -> CurveJet {
        if order <= 2 {
            self.f.eval2(s)
        } else {
            self.f.eval3(s)
        }
    }

    /// The same curve traversed in the opposite direction (s ↦ −s).
    pub fn reversed(&self) -> ProfileCurve {
        struct Rev(Arc<dyn ProfileFn>);
        impl ProfileFn for Rev {
            fn eval2(&self, s: f64) -> CurveJet {
                flip(self.0.eval2(-s))
            }
            fn eval3(&self, s: f64) -> CurveJet {
                flip(self.0.eval3(-s))
            }
        }
        fn flip(j: CurveJet) -> CurveJet {
            CurveJet {
                x: [j.x[0], -j.x[1], j.x[2], -j.x[3]],
                t: [j.t[0], -j.t[1], j.t[2], -j.t[3]],
            }
        }
        ProfileCurve {
            domain: (-self.domain.1, -self.domain.0),
            characteristic_endpoints: (
                self.characteristic_endpoints.1,
                self.characteristic_endpoints.0,
            ),
            f: Arc::new(Rev(self.f.clone())),
        }
    }
}

/// A profile defined by analytic closures returning full third-order jets.
pub struct AnalyticProfile<F: Fn(f64) -> CurveJet + Send + Sync>(pub F);

impl<F: Fn(f64) -> CurveJet + Send + Sync> ProfileFn for AnalyticProfile<F> {
    fn eval2(&self, s: f64) -> CurveJet {
        (self.0)(s)
    }
    fn eval3(&self, s: f64) -> CurveJet {
        (self.0)(s)
    }
}

/// A profile given only by its coordinate functions; derivatives are
/// synthesized by five-point central differences with step
/// `1e-5 * domain length`.
pub struct DifferencedProfile {
    pub x: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    pub t: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    pub step: f64,
}

impl ProfileFn for DifferencedProfile {
    fn eval2(&self, s: f64) -> CurveJet {
        let (x0, dx, ddx) = diff::jet2_by_differences(&self.x, s, self.step);
        let (t0, dt, ddt) = diff::jet2_by_differences(&self.t, s, self.step);
        CurveJet {
            x: [x0, dx, ddx, 0.0],
            t: [t0, dt, ddt, 0.0],
        }
    }
    fn eval3(&self, s: f64) -> CurveJet {
        let mut j = self.eval2(s);
        j.x[3] = diff::third_derivative_by_differences(&self.x, s, self.step);
        j.t[3] = diff::third_derivative_by_differences(&self.t, s, self.step);
        j
    }
}

/// Pointwise geometric package at parameter s.
#[derive(Clone, Copy, Debug)]
pub struct GeometryPoint {
    pub s: f64,
    pub x: f64,
    pub t: f64,
    pub alpha: f64,
    pub mean_curv: f64,
    pub area_density: f64,
    pub jv_alpha_plus_alpha_sq: f64,
    pub jv_coeff_s: f64,
    pub jv_coeff_theta: f64,
    pub s_coeff_s: f64,
    pub s_coeff_theta: f64,
}

/// Coefficients of J(ν_h) and S in the (∂/∂s, ∂/∂θ) coordinate frame. For a
/// θ-independent function f, J(ν_h)f = jv_s · f′ and Sf = s_s · f′.
#[derive(Clone, Copy, Debug)]
pub struct FrameCoefficients {
    pub jv_s: f64,
    pub jv_theta: f64,
    pub s_s: f64,
    pub s_theta: f64,
}

fn checked(j: &CurveJet, s: f64) -> Result<f64> {
    let q = j.t[1] * j.t[1] + j.x[0] * j.x[0] * j.x[1] * j.x[1];
    if q <= TOL_DENOM || j.x[0] <= 0.0 {
        Err(Error::CharacteristicPoint { s, denom: q })
    } else {
        Ok(q)
    }
}

/// The fundamental function α = −ẋ/√(ṫ² + x²ẋ²).
pub fn fundamental_alpha(profile: &ProfileCurve, s: f64) -> Result<f64> {
    let j = profile.eval(s, 1);
    let q = checked(&j, s)?;
    Ok(-j.x[1] / q.sqrt())
}

/// The horizontal mean curvature H = (x³(ẋẗ − ẍṫ) + ṫ³)/(x(x²ẋ² + ṫ²)^{3/2}).
pub fn horizontal_mean_curvature(profile: &ProfileCurve, s: f64) -> Result<f64> {
    let j = profile.eval(s, 2);
    let q = checked(&j, s)?;
    let kappa = j.x[1] * j.t[2] - j.x[2] * j.t[1];
    let x = j.x[0];
    Ok((x.powi(3) * kappa + j.t[1].powi(3)) / (x * q.powf(1.5)))
}

/// Density of dσ with respect to ds dθ: x√(ṫ² + x²ẋ²), zero at degenerate
/// points.
pub fn area_density(profile: &ProfileCurve, s: f64) -> f64 {
    let j = profile.eval(s, 1);
    let q = j.t[1] * j.t[1] + j.x[0] * j.x[0] * j.x[1] * j.x[1];
    if q <= 0.0 || j.x[0] <= 0.0 {
        return 0.0;
    }
    j.x[0] * q.sqrt()
}

/// J(ν_h)α + α² = ṫ(ẋ²ṫ − x(ẋẗ − ẍṫ))/(ṫ² + x²ẋ²)².
pub fn jv_alpha_plus_alpha_sq(profile: &ProfileCurve, s: f64) -> Result<f64> {
    let j = profile.eval(s, 2);
    let q = checked(&j, s)?;
    let kappa = j.x[1] * j.t[2] - j.x[2] * j.t[1];
    Ok(j.t[1] * (j.x[1] * j.x[1] * j.t[1] - j.x[0] * kappa) / (q * q))
}

/// The coordinate-frame coefficients of J(ν_h) and S.
pub fn frame_coefficients(profile: &ProfileCurve, s: f64) -> Result<FrameCoefficients> {
    let j = profile.eval(s, 1);
    let q = checked(&j, s)?;
    let rq = q.sqrt();
    Ok(FrameCoefficients {
        jv_s: -j.x[0] / rq,
        jv_theta: j.t[1] / (j.x[0] * rq),
        s_s: j.t[1] / q,
        s_theta: j.x[1] * j.x[1] / q,
    })
}

/// dα/ds, exactly, by propagating a second-order jet through the defining
/// formula (this is where profile third derivatives enter).
pub fn alpha_s_derivative(profile: &ProfileCurve, s: f64) -> Result<f64> {
    let j = profile.eval(s, 3);
    checked(&j, s)?;
    let x = Jet2::new(j.x[0], j.x[1], j.x[2]);
    let dx = Jet2::new(j.x[1], j.x[2], j.x[3]);
    let dt = Jet2::new(j.t[1], j.t[2], j.t[3]);
    let alpha = -dx / (dt * dt + x * x * dx * dx).sqrt();
    Ok(alpha.df)
}

/// Sα (the derivative of α along the vector field S); α is θ-independent so
/// Sα = s_s · dα/ds.
pub fn s_alpha(profile: &ProfileCurve, s: f64) -> Result<f64> {
    let fc = frame_coefficients(profile, s)?;
    Ok(fc.s_s * alpha_s_derivative(profile, s)?)
}

/// J(ν_h)α = jv_s · dα/ds for θ-independent α.
pub fn jv_alpha(profile: &ProfileCurve, s: f64) -> Result<f64> {
    let fc = frame_coefficients(profile, s)?;
    Ok(fc.jv_s * alpha_s_derivative(profile, s)?)
}

/// The full pointwise package.
pub fn geometry_point(profile: &ProfileCurve, s: f64) -> Result<GeometryPoint> {
    let j = profile.eval(s, 2);
    let q = checked(&j, s)?;
    let x = j.x[0];
    let kappa = j.x[1] * j.t[2] - j.x[2] * j.t[1];
    let rq = q.sqrt();
    Ok(GeometryPoint {
        s,
        x,
        t: j.t[0],
        alpha: -j.x[1] / rq,
        mean_curv: (x.powi(3) * kappa + j.t[1].powi(3)) / (x * q.powf(1.5)),
        area_density: x * rq,
        jv_alpha_plus_alpha_sq: j.t[1] * (j.x[1] * j.x[1] * j.t[1] - x * kappa) / (q * q),
        jv_coeff_s: -x / rq,
        jv_coeff_theta: j.t[1] / (x * rq),
        s_coeff_s: j.t[1] / q,
        s_coeff_theta: j.x[1] * j.x[1] / q,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_surface, SurfaceSpec};
    use std::f64::consts::PI;

    #[test]
    fn profiles_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<ProfileCurve>();
    }

    #[test]
    fn cylinder_alpha_vanishes() {
        let c = make_surface(&SurfaceSpec::Cylinder { radius: 1.0 }).unwrap();
        for s in [0.1, 0.5, 0.9] {
            assert_eq!(fundamental_alpha(&c, s).unwrap(), 0.0);
        }
    }

    #[test]
    fn cylinder_mean_curvature_is_one() {
        let c = make_surface(&SurfaceSpec::Cylinder { radius: 1.0 }).unwrap();
        assert!((horizontal_mean_curvature(&c, 0.7).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn cylinder_density_is_one() {
        let c = make_surface(&SurfaceSpec::Cylinder { radius: 1.0 }).unwrap();
        assert!((area_density(&c, 0.3) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn plane_is_minimal() {
        let p = make_surface(&SurfaceSpec::Plane).unwrap();
        assert_eq!(horizontal_mean_curvature(&p, 1.0).unwrap(), 0.0);
        assert_eq!(jv_alpha_plus_alpha_sq(&p, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn pansu_alt_alpha_zero_at_equator() {
        // alternative Pansu parametrization has x'(0) = 0
        let p = make_surface(&SurfaceSpec::PansuAlt { radius: 1.0 }).unwrap();
        assert!(fundamental_alpha(&p, 0.0).unwrap().abs() < 1e-15);
    }

    #[test]
    fn pansu_mean_curvature_is_two() {
        let p = make_surface(&SurfaceSpec::Pansu { radius: 1.0 }).unwrap();
        assert!((horizontal_mean_curvature(&p, 0.3).unwrap() - 2.0).abs() < 1e-12);
        // area density at the equator s = pi is 1/2
        assert!((area_density(&p, PI) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn pm_alpha_is_sin_over_x() {
        // on the critical family, alpha = sin(s)/x(s)
        let l = 0.25;
        let p = make_surface(&SurfaceSpec::PansuMinkowski { l }).unwrap();
        let s = 0.5;
        let x = p.eval(s, 0).x[0];
        let a = fundamental_alpha(&p, s).unwrap();
        assert!((a - s.sin() / x).abs() < 1e-14, "{a}");
    }

    #[test]
    fn pm_mean_curvature_closed_form() {
        let l = 0.25;
        let k: f64 = 1.0 - 2.0 * l;
        let p = make_surface(&SurfaceSpec::PansuMinkowski { l }).unwrap();
        for s in [0.05f64, 0.3, 0.6] {
            let c4 = s.cos().powi(4);
            let expect = 4.0 * l * c4 / (c4 - k * k);
            let h = horizontal_mean_curvature(&p, s).unwrap();
            assert!((h - expect).abs() < 1e-12 * expect.abs(), "{h} vs {expect}");
        }
    }

    #[test]
    fn pm_density_vanishes_at_endpoints() {
        for l in [0.05, 0.1, 0.25, 0.4, 0.5] {
            let p = make_surface(&SurfaceSpec::PansuMinkowski { l }).unwrap();
            let (a, b) = p.domain();
            assert!(area_density(&p, a).abs() < 1e-9, "L={l}");
            assert!(area_density(&p, b).abs() < 1e-9, "L={l}");
        }
    }

    #[test]
    fn pansu_jv_alpha_identity() {
        // stationarity at L = 1/2 forces J(nu)alpha + alpha^2 = -1
        let p = make_surface(&SurfaceSpec::Pansu { radius: 1.0 }).unwrap();
        for s in [0.8, PI, 4.0] {
            let v = jv_alpha_plus_alpha_sq(&p, s).unwrap();
            assert!((v + 1.0).abs() < 1e-12, "{v}");
        }
    }

    #[test]
    fn cylinder_frame_coefficients() {
        let c = make_surface(&SurfaceSpec::Cylinder { radius: 1.0 }).unwrap();
        let fc = frame_coefficients(&c, 0.4).unwrap();
        assert!((fc.jv_s + 1.0).abs() < 1e-15);
        assert!((fc.jv_theta - 1.0).abs() < 1e-15);
        assert!((fc.s_s - 1.0).abs() < 1e-15);
        assert!(fc.s_theta.abs() < 1e-15);
    }

    #[test]
    fn pm_frame_coefficients_closed_form() {
        let l = 0.3;
        let k = 1.0 - 2.0 * l;
        let p = make_surface(&SurfaceSpec::PansuMinkowski { l }).unwrap();
        let s: f64 = 0.35;
        let x = (s.cos() - k / s.cos()) / (2.0 * l);
        let h = (s.cos() + k / s.cos()) / (2.0 * l);
        let fc = frame_coefficients(&p, s).unwrap();
        assert!((fc.jv_s + s.cos() / h).abs() < 1e-13);
        assert!((fc.s_s - s.cos().powi(2) / (x * h)).abs() < 1e-13);
    }

    #[test]
    fn pansu_at_half_l_has_jv_coeff_minus_one() {
        // the h = x specialization of the critical family
        let p = make_surface(&SurfaceSpec::PansuMinkowski { l: 0.5 }).unwrap();
        let fc = frame_coefficients(&p, 0.3).unwrap();
        assert!((fc.jv_s + 1.0).abs() < 1e-13);
    }

    #[test]
    fn characteristic_point_detected() {
        let p = make_surface(&SurfaceSpec::Pansu { radius: 1.0 }).unwrap();
        assert!(matches!(
            fundamental_alpha(&p, 0.0),
            Err(Error::CharacteristicPoint { .. })
        ));
    }

    #[test]
    fn orientation_reversal_flips_signs() {
        let p = make_surface(&SurfaceSpec::Koranyi { radius: 1.0 }).unwrap();
        let r = p.reversed();
        for s in [0.2, 0.7, -0.4] {
            let a = fundamental_alpha(&p, s).unwrap();
            let ar = fundamental_alpha(&r, -s).unwrap();
            assert!((a + ar).abs() < 1e-14);
            let h = horizontal_mean_curvature(&p, s).unwrap();
            let hr = horizontal_mean_curvature(&r, -s).unwrap();
            assert!((h + hr).abs() < 1e-12);
            assert!((area_density(&p, s) - area_density(&r, -s)).abs() < 1e-14);
        }
    }

    #[test]
    fn derivative_consistency_with_differences() {
        // eval(s, k) agrees with central differences of eval(., k-1)
        let p = make_surface(&SurfaceSpec::Koranyi { radius: 1.3 }).unwrap();
        let h = 1e-5;
        for s in [-0.6, 0.1, 0.9] {
            for k in 1..=3usize {
                let jp = p.eval(s + h, 3);
                let jm = p.eval(s - h, 3);
                let j = p.eval(s, 3);
                let fd_x = (jp.x[k - 1] - jm.x[k - 1]) / (2.0 * h);
                let fd_t = (jp.t[k - 1] - jm.t[k - 1]) / (2.0 * h);
                assert!(
                    (fd_x - j.x[k]).abs() < 1e-6 * j.x[k].abs().max(1.0),
                    "x order {k} at {s}: {fd_x} vs {}",
                    j.x[k]
                );
                assert!(
                    (fd_t - j.t[k]).abs() < 1e-6 * j.t[k].abs().max(1.0),
                    "t order {k} at {s}: {fd_t} vs {}",
                    j.t[k]
                );
            }
        }
    }

    #[test]
    fn jv_identity_against_finite_differences() {
        // jv_alpha_plus_alpha_sq closed form vs jv_s * dalpha/ds + alpha^2
        let p = make_surface(&SurfaceSpec::Koranyi { radius: 1.0 }).unwrap();
        let h = 1e-5;
        for s in [-0.8, -0.2, 0.5, 1.1] {
            let closed = jv_alpha_plus_alpha_sq(&p, s).unwrap();
            let fc = frame_coefficients(&p, s).unwrap();
            let a = fundamental_alpha(&p, s).unwrap();
            let da = (fundamental_alpha(&p, s + h).unwrap()
                - fundamental_alpha(&p, s - h).unwrap())
                / (2.0 * h);
            let assembled = fc.jv_s * da + a * a;
            assert!(
                (closed - assembled).abs() < 1e-6 * closed.abs().max(1.0),
                "{closed} vs {assembled}"
            );
        }
    }

    #[test]
    fn alpha_s_derivative_matches_differences() {
        let p = make_surface(&SurfaceSpec::PansuMinkowski { l: 0.25 }).unwrap();
        let h = 1e-6;
        for s in [-0.5, 0.1, 0.6] {
            let exact = alpha_s_derivative(&p, s).unwrap();
            let fd = (fundamental_alpha(&p, s + h).unwrap()
                - fundamental_alpha(&p, s - h).unwrap())
                / (2.0 * h);
            assert!((exact - fd).abs() < 1e-8 * exact.abs().max(1.0));
        }
    }
}
