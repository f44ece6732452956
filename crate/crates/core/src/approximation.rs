//! Riemannian approximation of the horizontal quantities: the mean curvature
//! and surface measure of the metric making (X, Y, εT) orthonormal, restricted
//! to rotationally invariant surfaces, and their ε → 0 convergence.
//!
//! The approximated quantities reduce to one-dimensional expressions in the
//! fundamental function α and its derivative along the profile:
//!
//!   H^ε = H/√(1 + ε²α²) + ε² Sα/(1 + ε²α²)^{3/2},
//!   ε · dσ^ε = √(1 + ε²α²) · dσ,          (dσ the horizontal area element)
//!   |h^ε|² + Ric^ε(n^ε, n^ε)
//!     = (H² + 4J(ν_h)α + 4α²)/(1 + ε²α²)
//!       + 2ε²(J(ν_h)α)²/(1 + ε²α²)² + ε⁴(Sα)²/(1 + ε²α²)³,
//!
//! the last one converging to the zero-order Jacobi potential
//! H² + 4J(ν_h)α + 4α².

use crate::catalog::{make_surface, SurfaceSpec};
use crate::error::{Error, Result};
use crate::geometry::{self, ProfileCurve};
use crate::numerics::quad::{integrate, FunctionalResult, QuadratureConfig};
use std::f64::consts::PI;

/// Pointwise package of the ε-metric quantities.
#[derive(Clone, Copy, Debug)]
pub struct EpsMetricPoint {
    pub eps: f64,
    pub mean_curv_eps: f64,
    /// Density of dσ^ε with respect to ds dθ.
    pub area_density_eps: f64,
    pub s_alpha: f64,
}

fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "approximation parameter must be positive, got {eps}"
        )));
    }
    Ok(())
}

/// H^ε at a non-characteristic point.
pub fn eps_mean_curvature(profile: &ProfileCurve, s: f64, eps: f64) -> Result<f64> {
    check_eps(eps)?;
    let h = geometry::horizontal_mean_curvature(profile, s)?;
    let alpha = geometry::fundamental_alpha(profile, s)?;
    let sa = geometry::s_alpha(profile, s)?;
    let m = 1.0 + eps * eps * alpha * alpha;
    Ok(h / m.sqrt() + eps * eps * sa / m.powf(1.5))
}

/// The full pointwise ε-package.
pub fn eps_metric_point(profile: &ProfileCurve, s: f64, eps: f64) -> Result<EpsMetricPoint> {
    check_eps(eps)?;
    let h = geometry::horizontal_mean_curvature(profile, s)?;
    let alpha = geometry::fundamental_alpha(profile, s)?;
    let sa = geometry::s_alpha(profile, s)?;
    let m = 1.0 + eps * eps * alpha * alpha;
    Ok(EpsMetricPoint {
        eps,
        mean_curv_eps: h / m.sqrt() + eps * eps * sa / m.powf(1.5),
        area_density_eps: m.sqrt() * geometry::area_density(profile, s) / eps,
        s_alpha: sa,
    })
}

/// σ^ε of the surface. The density is computed in the cancellation-free form
/// x√(q + ε²ẋ²)/ε with q = ṫ² + x²ẋ², which stays regular through the
/// characteristic endpoints.
pub fn eps_area(spec: &SurfaceSpec, eps: f64, cfg: &QuadratureConfig) -> Result<FunctionalResult> {
    let p = make_surface(spec)?;
    eps_area_of_profile(&p, eps, cfg)
}

pub fn eps_area_of_profile(
    p: &ProfileCurve,
    eps: f64,
    cfg: &QuadratureConfig,
) -> Result<FunctionalResult> {
    check_eps(eps)?;
    let (a, b) = p.domain();
    let mut r = integrate(
        |s| {
            let j = p.eval(s, 1);
            let q = j.t[1] * j.t[1] + j.x[0] * j.x[0] * j.x[1] * j.x[1];
            j.x[0] * (q + eps * eps * j.x[1] * j.x[1]).sqrt()
        },
        a,
        b,
        cfg,
    )?;
    r.value *= 2.0 * PI / eps;
    r.err_est *= 2.0 * PI / eps;
    Ok(r)
}

/// ε·σ^ε − σ, evaluated as one difference integral (stable form
/// x ε²ẋ²/(√(q + ε²ẋ²) + √q)), for convergence-rate measurements.
pub fn eps_area_defect(p: &ProfileCurve, eps: f64, cfg: &QuadratureConfig) -> Result<f64> {
    check_eps(eps)?;
    let (a, b) = p.domain();
    let r = integrate(
        |s| {
            let j = p.eval(s, 1);
            let q = j.t[1] * j.t[1] + j.x[0] * j.x[0] * j.x[1] * j.x[1];
            let e2 = eps * eps * j.x[1] * j.x[1];
            j.x[0] * e2 / ((q + e2).sqrt() + q.sqrt())
        },
        a,
        b,
        cfg,
    )?;
    Ok(2.0 * PI * r.value)
}

/// |h^ε|² + Ric^ε(n^ε, n^ε) at a non-characteristic point.
pub fn jacobi_potential_eps(profile: &ProfileCurve, s: f64, eps: f64) -> Result<f64> {
    check_eps(eps)?;
    let h = geometry::horizontal_mean_curvature(profile, s)?;
    let alpha = geometry::fundamental_alpha(profile, s)?;
    let jva = geometry::jv_alpha(profile, s)?;
    let sa = geometry::s_alpha(profile, s)?;
    let m = 1.0 + eps * eps * alpha * alpha;
    Ok((h * h + 4.0 * jva + 4.0 * alpha * alpha) / m
        + 2.0 * eps * eps * jva * jva / (m * m)
        + eps.powi(4) * sa * sa / (m * m * m))
}

/// The ε → 0 limit H² + 4J(ν_h)α + 4α² of the Jacobi potential.
pub fn jacobi_potential_limit(profile: &ProfileCurve, s: f64) -> Result<f64> {
    let h = geometry::horizontal_mean_curvature(profile, s)?;
    let alpha = geometry::fundamental_alpha(profile, s)?;
    let jva = geometry::jv_alpha(profile, s)?;
    Ok(h * h + 4.0 * jva + 4.0 * alpha * alpha)
}

/// Least-squares slope of log(y) against log(x); the convergence order of a
/// defect sequence.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y) in points {
        let lx = x.ln();
        let ly = y.ln();
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// Sample points of the compact band 0.1 ≤ |s − center|/halfwidth ≤ 0.9 of
/// the profile domain, `n` points per side.
pub fn compact_band(p: &ProfileCurve, n: usize) -> Vec<f64> {
    let (a, b) = p.domain();
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut out = Vec::with_capacity(2 * n);
    for i in 0..n {
        let f = 0.1 + 0.8 * (i as f64 + 0.5) / n as f64;
        out.push(center - f * half);
        out.push(center + f * half);
    }
    out.sort_by(f64::total_cmp);
    out
}

/// Max over the compact band of |H^ε − H| for each requested ε.
pub fn mean_curvature_defects(p: &ProfileCurve, epsilons: &[f64]) -> Result<Vec<(f64, f64)>> {
    let band = compact_band(p, 25);
    let mut out = Vec::with_capacity(epsilons.len());
    for &eps in epsilons {
        let mut worst = 0.0f64;
        for &s in &band {
            let h = geometry::horizontal_mean_curvature(p, s)?;
            let he = eps_mean_curvature(p, s, eps)?;
            worst = worst.max((he - h).abs());
        }
        out.push((eps, worst));
    }
    Ok(out)
}

/// Max over the compact band of the Jacobi-potential defect for each ε.
pub fn jacobi_potential_defects(p: &ProfileCurve, epsilons: &[f64]) -> Result<Vec<(f64, f64)>> {
    let band = compact_band(p, 25);
    let mut out = Vec::with_capacity(epsilons.len());
    for &eps in epsilons {
        let mut worst = 0.0f64;
        for &s in &band {
            let lim = jacobi_potential_limit(p, s)?;
            let v = jacobi_potential_eps(p, s, eps)?;
            worst = worst.max((v - lim).abs());
        }
        out.push((eps, worst));
    }
    Ok(out)
}
