//! Integral functionals of rotationally invariant surfaces and their
//! scale-invariant quotients.
//!
//! With q = ṫ² + x²ẋ² and κ = ẋẗ − ẍṫ, the one-dimensional reductions are
//!
//!   area   = 2π ∫ x √q ds,
//!   tmc    = 2π ∫ (x³κ + ṫ³)/q ds,
//!   timc   = 2π ∫ x² q² / (x³κ + ṫ³) ds,
//!   volume =  π |∫ x² ṫ ds|,
//!
//! the θ-integral having been resolved by the angular factor 2π.

use crate::catalog::{make_surface, PmParams, SurfaceSpec};
use crate::error::{Error, Result};
use crate::geometry::ProfileCurve;
use crate::numerics::quad::{integrate, FunctionalResult, QuadratureConfig};
use std::f64::consts::PI;

/// Functionals plus the three dilation-invariant quotients.
#[derive(Clone, Copy, Debug)]
pub struct QuotientReport {
    pub area: FunctionalResult,
    pub tmc: FunctionalResult,
    pub timc: FunctionalResult,
    pub volume: FunctionalResult,
    /// tmc / area^{2/3}
    pub mink_quotient: f64,
    /// timc / volume
    pub hk_quotient: f64,
    /// area / volume^{3/4}
    pub isop_quotient: f64,
}

pub(crate) fn area_integrand(p: &ProfileCurve, s: f64) -> f64 {
    let j = p.eval(s, 1);
    let q = j.t[1] * j.t[1] + j.x[0] * j.x[0] * j.x[1] * j.x[1];
    if q <= 0.0 || j.x[0] <= 0.0 {
        return 0.0;
    }
    j.x[0] * q.sqrt()
}

pub(crate) fn tmc_integrand(p: &ProfileCurve, s: f64) -> f64 {
    let j = p.eval(s, 2);
    let q = j.t[1] * j.t[1] + j.x[0] * j.x[0] * j.x[1] * j.x[1];
    if q <= 0.0 {
        return 0.0;
    }
    let kappa = j.x[1] * j.t[2] - j.x[2] * j.t[1];
    (j.x[0].powi(3) * kappa + j.t[1].powi(3)) / q
}

fn timc_integrand(p: &ProfileCurve, s: f64) -> f64 {
    let j = p.eval(s, 2);
    let q = j.t[1] * j.t[1] + j.x[0] * j.x[0] * j.x[1] * j.x[1];
    let kappa = j.x[1] * j.t[2] - j.x[2] * j.t[1];
    let denom = j.x[0].powi(3) * kappa + j.t[1].powi(3);
    if denom == 0.0 {
        return 0.0;
    }
    j.x[0] * j.x[0] * q * q / denom
}

fn volume_integrand(p: &ProfileCurve, s: f64) -> f64 {
    let j = p.eval(s, 1);
    j.x[0] * j.x[0] * j.t[1]
}

/// Sample the horizontal mean curvature on the open interior, skipping
/// characteristic samples. Returns the minimum (s, H) pair seen.
fn sample_min_mean_curvature(p: &ProfileCurve, n: usize) -> Option<(f64, f64)> {
    let (a, b) = p.domain();
    let len = b - a;
    let mut min: Option<(f64, f64)> = None;
    for i in 0..n {
        let s = a + len * (0.5 + i as f64) / n as f64;
        if let Ok(h) = crate::geometry::horizontal_mean_curvature(p, s) {
            if min.is_none_or(|(_, hm)| h < hm) {
                min = Some((s, h));
            }
        }
    }
    min
}

/// σ(S) over the stored parameter range.
pub fn sub_riemannian_area(spec: &SurfaceSpec, cfg: &QuadratureConfig) -> Result<FunctionalResult> {
    let p = make_surface(spec)?;
    area_of_profile(&p, cfg)
}

pub fn area_of_profile(p: &ProfileCurve, cfg: &QuadratureConfig) -> Result<FunctionalResult> {
    let (a, b) = p.domain();
    let mut r = integrate(|s| area_integrand(p, s), a, b, cfg)?;
    r.value *= 2.0 * PI;
    r.err_est *= 2.0 * PI;
    Ok(r)
}

/// ∫ H dσ. Returns the value together with a mean-convexity flag; a negative
/// sample only demotes the flag, it does not fail the evaluation.
pub fn total_mean_curvature(
    spec: &SurfaceSpec,
    cfg: &QuadratureConfig,
) -> Result<(FunctionalResult, bool)> {
    let p = make_surface(spec)?;
    tmc_of_profile(&p, cfg)
}

pub fn tmc_of_profile(
    p: &ProfileCurve,
    cfg: &QuadratureConfig,
) -> Result<(FunctionalResult, bool)> {
    let (a, b) = p.domain();
    let mean_convex = sample_min_mean_curvature(p, 200).is_none_or(|(_, h)| h >= -1e-9);
    let mut r = integrate(|s| tmc_integrand(p, s), a, b, cfg)?;
    r.value *= 2.0 * PI;
    r.err_est *= 2.0 * PI;
    Ok((r, mean_convex))
}

/// ∫ (1/H) dσ; requires strict mean convexity.
pub fn total_inverse_mean_curvature(
    spec: &SurfaceSpec,
    cfg: &QuadratureConfig,
) -> Result<FunctionalResult> {
    let p = make_surface(spec)?;
    timc_of_profile(&p, cfg)
}

pub fn timc_of_profile(p: &ProfileCurve, cfg: &QuadratureConfig) -> Result<FunctionalResult> {
    if let Some((s, h)) = sample_min_mean_curvature(p, 200) {
        if h <= 1e-9 {
            return Err(Error::NotStrictlyMeanConvex { s, h_min: h });
        }
    }
    let (a, b) = p.domain();
    let mut r = integrate(|s| timc_integrand(p, s), a, b, cfg)?;
    r.value *= 2.0 * PI;
    r.err_est *= 2.0 * PI;
    Ok(r)
}

/// Lebesgue volume of the enclosed region, π |∫ x² ṫ ds|.
pub fn enclosed_volume(spec: &SurfaceSpec, cfg: &QuadratureConfig) -> Result<FunctionalResult> {
    let p = make_surface(spec)?;
    volume_of_profile(&p, cfg)
}

pub fn volume_of_profile(p: &ProfileCurve, cfg: &QuadratureConfig) -> Result<FunctionalResult> {
    let (a, b) = p.domain();
    let mut r = integrate(|s| volume_integrand(p, s), a, b, cfg)?;
    r.value = (PI * r.value).abs();
    r.err_est *= PI;
    Ok(r)
}

/// All four functionals and the three quotients in one report.
pub fn quotients(spec: &SurfaceSpec, cfg: &QuadratureConfig) -> Result<QuotientReport> {
    let p = make_surface(spec)?;
    let area = area_of_profile(&p, cfg)?;
    let (tmc, _) = tmc_of_profile(&p, cfg)?;
    let timc = timc_of_profile(&p, cfg)?;
    let volume = volume_of_profile(&p, cfg)?;
    Ok(QuotientReport {
        area,
        tmc,
        timc,
        volume,
        mink_quotient: tmc.value / area.value.powf(2.0 / 3.0),
        hk_quotient: timc.value / volume.value,
        isop_quotient: area.value / volume.value.powf(0.75),
    })
}

/// The two one-parameter competitor families through the catalog spheres.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    PansuR,
    KoranyiR,
}

impl Family {
    pub fn spec(&self, r: f64) -> SurfaceSpec {
        match self {
            Family::PansuR => SurfaceSpec::Pansu { radius: r },
            Family::KoranyiR => SurfaceSpec::Koranyi { radius: r },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quotient {
    Mink,
    Hk,
    Isop,
}

impl Quotient {
    pub fn of(&self, report: &QuotientReport) -> f64 {
        match self {
            Quotient::Mink => report.mink_quotient,
            Quotient::Hk => report.hk_quotient,
            Quotient::Isop => report.isop_quotient,
        }
    }
}

const FAMILY_FD_STEP: f64 = 1e-4;

fn central4(f: impl Fn(f64) -> Result<f64>, x0: f64, h: f64) -> Result<f64> {
    Ok((8.0 * (f(x0 + h)? - f(x0 - h)?) - (f(x0 + 2.0 * h)? - f(x0 - 2.0 * h)?)) / (12.0 * h))
}

/// d/dR at R = 1 of R ↦ quotient(family(R)), by fourth-order central
/// differences with step 1e-4. Quadratures run at tightened tolerance so the
/// difference quotient is not noise-limited.
pub fn family_derivative(family: Family, quotient: Quotient) -> Result<f64> {
    let cfg = QuadratureConfig::tight();
    central4(
        |r| Ok(quotient.of(&quotients(&family.spec(r), &cfg)?)),
        1.0,
        FAMILY_FD_STEP,
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constraint {
    Area,
    Volume,
}

/// d/dR at R = 1 of the constrained functional along the dilation-normalized
/// family: the total mean curvature of δ_{β(R)}(S^R) with β(R)³ = σ(S¹)/σ(S^R)
/// under the area constraint, the total inverse mean curvature of
/// δ_{γ(R)}(S^R) with γ(R)⁴ = |Ω(S¹)|/|Ω(S^R)| under the volume constraint.
pub fn rescaled_family_derivative(family: Family, constraint: Constraint) -> Result<f64> {
    let cfg = QuadratureConfig::tight();
    match constraint {
        Constraint::Area => {
            let base_area = sub_riemannian_area(&family.spec(1.0), &cfg)?.value;
            central4(
                |r| {
                    let spec = family.spec(r);
                    let area = sub_riemannian_area(&spec, &cfg)?.value;
                    // H dσ scales like λ², so TMC(δ_β S) = β² TMC(S)
                    let beta2 = (base_area / area).powf(2.0 / 3.0);
                    Ok(beta2 * total_mean_curvature(&spec, &cfg)?.0.value)
                },
                1.0,
                FAMILY_FD_STEP,
            )
        }
        Constraint::Volume => {
            let base_vol = enclosed_volume(&family.spec(1.0), &cfg)?.value;
            central4(
                |r| {
                    let spec = family.spec(r);
                    let vol = enclosed_volume(&spec, &cfg)?.value;
                    // (1/H) dσ scales like λ⁴, exactly like the volume
                    let gamma4 = base_vol / vol;
                    Ok(gamma4 * total_inverse_mean_curvature(&spec, &cfg)?.value)
                },
                1.0,
                FAMILY_FD_STEP,
            )
        }
    }
}

/// Closed-form area of the critical sphere S_L.
pub fn pm_area_closed(l: f64) -> Result<f64> {
    let pm = PmParams::new(l)?;
    let root = (2.0 * l * pm.k).sqrt();
    Ok(PI / (4.0 * l.powi(3)) * ((4.0 * l - 1.0) * pm.s_max + (1.0 - 8.0 * l * pm.k / 3.0) * root))
}

/// Closed-form total mean curvature of S_L.
pub fn pm_tmc_closed(l: f64) -> Result<f64> {
    let pm = PmParams::new(l)?;
    let root = (2.0 * l * pm.k).sqrt();
    Ok(PI / (l * l) * ((4.0 * l - 1.0) * pm.s_max + root))
}

/// ℓ = 2 arccos √(1 − 2L) ∈ (0, π]; the reparametrization that stays
/// accurate near L = 1/2.
pub fn ell_of_l(l: f64) -> Result<f64> {
    Ok(2.0 * PmParams::new(l)?.s_max)
}

pub fn l_of_ell(ell: f64) -> f64 {
    let c = (ell / 2.0).cos();
    0.5 * (1.0 - c * c)
}

/// Closed form of the Minkowski quotient of S_{L(ℓ)}:
/// 4 (2π)^{1/3} (sin ℓ − ℓ cos ℓ) / (3 sin ℓ + sin 3ℓ/3 − 4ℓ cos ℓ)^{2/3}.
pub fn pm_mink_quotient_ell(ell: f64) -> f64 {
    let num = ell.sin() - ell * ell.cos();
    let den = 3.0 * ell.sin() + (3.0 * ell).sin() / 3.0 - 4.0 * ell * ell.cos();
    4.0 * (2.0 * PI).powf(1.0 / 3.0) * num / den.powf(2.0 / 3.0)
}
