//! Second-variation analysis at the critical spheres S_L: the rotationally
//! invariant quadratic form with its coercivity lower bound, the angular
//! instability construction, horizontally-normal graph perturbations and the
//! local-minimality experiment.
//!
//! On S_L (with k = 1 − 2L, x = x_L, h the auxiliary function) the second
//! variation of the penalized functional tmc − 4L·area along a variation
//! with θ-independent normal part φ reduces to
//!
//!   δ²P[φ] = 8π ∫ [ (cos³s/(x h²) − L cos²s/h²) φ′²
//!                  + (2(1−2L)/(x³h)) φ² ] · (x²h/cos s) ds,
//!
//! bounded below by 4(1−L)∫(J(ν_h)φ)² dσ + (8L(1−2L)/(1−L))∫φ² dσ with
//! (J(ν_h)φ)² = (cos s/h)² φ′². Angular modes ψ(s) sin(Mθ) split the form
//! into an M-independent part A and −M²·B with B > 0, so every L admits a
//! finite unstable frequency.

use crate::catalog::{make_surface, PmParams, SurfaceSpec};
use crate::error::{Error, Result};
use crate::functionals::{area_integrand, tmc_integrand};
use crate::geometry::{self, CurveJet, ProfileCurve, ProfileFn};
use crate::numerics::jet::Jet2;
use crate::numerics::quad::{integrate, QuadratureConfig};
use crate::numerics::root::find_root;
use rand::Rng;
use std::f64::consts::PI;
use std::sync::Arc;

/// A compactly supported bump of the canonical family
/// φ(s) = p(s) · exp(−1/(1 − u²)), with u the affine map of the support
/// onto (−1, 1) and p a polynomial of degree ≤ 4.
#[derive(Clone, Copy, Debug)]
pub struct TestFunction {
    support: (f64, f64),
    coeffs: [f64; 5],
}

impl TestFunction {
    pub fn new(support: (f64, f64), coeffs: [f64; 5]) -> Result<Self> {
        if !(support.1 > support.0) {
            return Err(Error::InvalidParameter(format!(
                "empty support ({}, {})",
                support.0, support.1
            )));
        }
        Ok(TestFunction { support, coeffs })
    }

    /// The plain bump (p ≡ 1).
    pub fn bump(support: (f64, f64)) -> Result<Self> {
        TestFunction::new(support, [1.0, 0.0, 0.0, 0.0, 0.0])
    }

    /// Random polynomial coefficients, uniform in [−scale, scale].
    pub fn random(support: (f64, f64), rng: &mut impl Rng, scale: f64) -> Result<Self> {
        let mut coeffs = [0.0; 5];
        for c in &mut coeffs {
            *c = rng.gen_range(-scale..scale);
        }
        TestFunction::new(support, coeffs)
    }

    /// Reproducible random bump from a bare seed.
    pub fn seeded(support: (f64, f64), seed: u64) -> Result<Self> {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        TestFunction::random(support, &mut rng, 1.0)
    }

    pub fn support(&self) -> (f64, f64) {
        self.support
    }

    pub fn scaled(&self, c: f64) -> TestFunction {
        let mut coeffs = self.coeffs;
        for k in &mut coeffs {
            *k *= c;
        }
        TestFunction {
            support: self.support,
            coeffs,
        }
    }

    /// self + c · other; both functions must share their support so the sum
    /// stays in the canonical family.
    pub fn combine(&self, other: &TestFunction, c: f64) -> Result<TestFunction> {
        if self.support != other.support {
            return Err(Error::InvalidParameter(
                "combined test functions must share their support".into(),
            ));
        }
        let mut coeffs = self.coeffs;
        for (k, o) in coeffs.iter_mut().zip(other.coeffs.iter()) {
            *k += c * o;
        }
        Ok(TestFunction {
            support: self.support,
            coeffs,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0.0)
    }

    /// φ with first and second derivative, as a jet in s.
    pub fn eval_jet(&self, s: f64) -> Jet2 {
        let (a, b) = self.support;
        let center = 0.5 * (a + b);
        let radius = 0.5 * (b - a);
        let u_val = (s - center) / radius;
        if u_val * u_val >= 1.0 - 1e-12 {
            return Jet2::constant(0.0);
        }
        let u = Jet2::new(u_val, 1.0 / radius, 0.0);
        let bump = (-(Jet2::constant(1.0) - u * u).recip()).exp();
        let sj = Jet2::variable(s);
        // Horner evaluation of p(s)
        let mut p = Jet2::constant(self.coeffs[4]);
        for c in self.coeffs.iter().rev().skip(1) {
            p = p * sj + *c;
        }
        p * bump
    }

    pub fn eval(&self, s: f64) -> f64 {
        self.eval_jet(s).f
    }
}

/// ψ(s) sin(Mθ) angular perturbation.
#[derive(Clone, Copy, Debug)]
pub struct AngularMode {
    pub psi: TestFunction,
    pub m: u32,
}

impl AngularMode {
    pub fn new(psi: TestFunction, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter(
                "angular frequency must be at least 1".into(),
            ));
        }
        if psi.is_zero() {
            return Err(Error::InvalidParameter(
                "angular profile must not be identically zero".into(),
            ));
        }
        Ok(AngularMode { psi, m })
    }
}

/// Normal perturbation datum: θ-independent or a single angular mode.
#[derive(Clone, Copy, Debug)]
pub enum PerturbationMode {
    RotInv(TestFunction),
    Angular(AngularMode),
}

/// Quadratic-form evaluation with the coercivity bound.
#[derive(Clone, Copy, Debug)]
pub struct SecondVariationReport {
    pub value: f64,
    pub lower_bound: f64,
    /// value − lower_bound; nonnegative for θ-independent perturbations.
    pub margin: f64,
    pub first_order_part: f64,
    pub zero_order_part: f64,
}

fn pm_checked(l: f64, phi: &TestFunction) -> Result<PmParams> {
    let pm = PmParams::new(l)?;
    let (a, b) = phi.support();
    if a <= -pm.s_max || b >= pm.s_max {
        return Err(Error::InvalidParameter(format!(
            "support ({a}, {b}) must stay inside (−{0}, {0})",
            pm.s_max
        )));
    }
    Ok(pm)
}

/// Zero-order coefficient 2Sα − H(α² + 4L²) of the quadratic form, in the
/// closed form 2(1 − 2L)/(x³h).
pub fn zero_order_coefficient(l: f64, s: f64) -> Result<f64> {
    let pm = PmParams::new(l)?;
    Ok(2.0 * pm.k / (pm.x(s).powi(3) * pm.h(s)))
}

/// The same coefficient assembled from the pointwise geometry of the catalog
/// profile (independent code path, used for cross-validation).
pub fn zero_order_coefficient_assembled(l: f64, s: f64) -> Result<f64> {
    let p = make_surface(&SurfaceSpec::PansuMinkowski { l })?;
    let sa = geometry::s_alpha(&p, s)?;
    let h = geometry::horizontal_mean_curvature(&p, s)?;
    let alpha = geometry::fundamental_alpha(&p, s)?;
    Ok(2.0 * sa - h * (alpha * alpha + 4.0 * l * l))
}

/// Pointwise coefficient of φ′² in −Sφ·J(ν_h)φ − (L + μ)(J(ν_h)φ)² for
/// θ-independent φ: (cos s/(2L x h²)) ((L − μ) cos²s + (L + μ)(1 − 2L)).
/// Nonnegative on the whole profile exactly when μ ≤ 1 − L.
pub fn first_order_pointwise_coefficient(l: f64, mu: f64, s: f64) -> Result<f64> {
    let pm = PmParams::new(l)?;
    let c = s.cos();
    Ok(c / (2.0 * l * pm.x(s) * pm.h(s).powi(2)) * ((l - mu) * c * c + (l + mu) * pm.k))
}

/// δ²P at S_L for a θ-independent perturbation, together with the coercivity
/// lower bound and the margin between them.
pub fn second_variation_rotinv(l: f64, phi: &TestFunction) -> Result<SecondVariationReport> {
    let pm = pm_checked(l, phi)?;
    let (a, b) = phi.support();
    let cfg = QuadratureConfig::default();
    let dens = |s: f64| {
        let x = pm.x(s);
        x * x * pm.h(s) / s.cos()
    };
    let first = integrate(
        |s| {
            let j = phi.eval_jet(s);
            let c = s.cos();
            let x = pm.x(s);
            let h = pm.h(s);
            (c.powi(3) / (x * h * h) - l * c * c / (h * h)) * j.df * j.df * dens(s)
        },
        a,
        b,
        &cfg,
    )?
    .value;
    let zero = integrate(
        |s| {
            let j = phi.eval_jet(s);
            2.0 * pm.k / (pm.x(s).powi(3) * pm.h(s)) * j.f * j.f * dens(s)
        },
        a,
        b,
        &cfg,
    )?
    .value;
    let lb_first = integrate(
        |s| {
            let j = phi.eval_jet(s);
            let c = s.cos();
            (c / pm.h(s)).powi(2) * j.df * j.df * dens(s)
        },
        a,
        b,
        &cfg,
    )?
    .value;
    let lb_zero = integrate(|s| phi.eval(s).powi(2) * dens(s), a, b, &cfg)?.value;

    let first_order_part = 8.0 * PI * first;
    let zero_order_part = 8.0 * PI * zero;
    let value = first_order_part + zero_order_part;
    let lower_bound =
        4.0 * (1.0 - l) * (2.0 * PI * lb_first) + 8.0 * l * pm.k / (1.0 - l) * (2.0 * PI * lb_zero);
    Ok(SecondVariationReport {
        value,
        lower_bound,
        margin: value - lower_bound,
        first_order_part,
        zero_order_part,
    })
}

/// Split of δ²P along ψ(s) sin(Mθ): the form equals `a − M² b` with `b > 0`.
#[derive(Clone, Copy, Debug)]
pub struct InstabilityReport {
    pub a: f64,
    pub b: f64,
    /// Smallest frequency with a negative form.
    pub m_star: u32,
}

impl InstabilityReport {
    pub fn quadratic_form(&self, m: u32) -> f64 {
        self.a - (m as f64) * (m as f64) * self.b
    }
}

/// Find the instability threshold for the angular family built on `psi`:
/// A and B of the split above and the smallest M with A − M²B < 0.
pub fn instability_threshold(l: f64, psi: &TestFunction) -> Result<InstabilityReport> {
    let pm = pm_checked(l, psi)?;
    if psi.is_zero() {
        return Err(Error::InvalidParameter(
            "angular profile must not be identically zero".into(),
        ));
    }
    let (a_lo, a_hi) = psi.support();
    let cfg = QuadratureConfig::default();
    let a = 4.0
        * PI
        * integrate(
            |s| {
                let j = psi.eval_jet(s);
                let c = s.cos();
                let x = pm.x(s);
                let h = pm.h(s);
                (x * c * c / h - l * x * x * c / h) * j.df * j.df + 2.0 * pm.k / (x * c) * j.f * j.f
            },
            a_lo,
            a_hi,
            &cfg,
        )?
        .value;
    let b = 4.0
        * PI
        * integrate(
            |s| {
                let c = s.cos();
                let x = pm.x(s);
                let h = pm.h(s);
                let f = psi.eval(s);
                (h * s.sin().powi(2) / x + l * h * c) * f * f
            },
            a_lo,
            a_hi,
            &cfg,
        )?
        .value;
    if !(b > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "angular coefficient must be positive, got {b}"
        )));
    }
    let mut m_star = (a.max(0.0) / b).sqrt().ceil().max(1.0) as u32;
    while a - (m_star as f64).powi(2) * b >= 0.0 {
        m_star += 1;
    }
    while m_star > 1 && a - ((m_star - 1) as f64).powi(2) * b < 0.0 {
        m_star -= 1;
    }
    Ok(InstabilityReport { a, b, m_star })
}

/// First variation of area along the perturbation: the θ-factor of a
/// sin(Mθ) mode vanishes identically, a θ-independent φ contributes
/// 2π ∫ φ · x(x + h) ds (the integrand being H times the area density).
pub fn first_order_area_defect(l: f64, mode: &PerturbationMode) -> Result<f64> {
    let pm = match mode {
        PerturbationMode::RotInv(phi) => pm_checked(l, phi)?,
        PerturbationMode::Angular(am) => pm_checked(l, &am.psi)?,
    };
    match mode {
        PerturbationMode::Angular(_) => Ok(0.0),
        PerturbationMode::RotInv(phi) => {
            let (a, b) = phi.support();
            let r = integrate(
                |s| {
                    let x = pm.x(s);
                    phi.eval(s) * x * (x + pm.h(s))
                },
                a,
                b,
                &QuadratureConfig::default(),
            )?;
            Ok(2.0 * PI * r.value)
        }
    }
}

struct PerturbedProfile {
    base: ProfileCurve,
    phi: TestFunction,
}

impl PerturbedProfile {
    fn jets(&self, s: f64) -> CurveJet {
        let j = self.base.eval(s, 3);
        let ph = self.phi.eval_jet(s);
        if ph.f == 0.0 && ph.df == 0.0 && ph.ddf == 0.0 {
            return j;
        }
        let x = Jet2::new(j.x[0], j.x[1], j.x[2]);
        let dx = Jet2::new(j.x[1], j.x[2], j.x[3]);
        let t = Jet2::new(j.t[0], j.t[1], j.t[2]);
        let dt = Jet2::new(j.t[1], j.t[2], j.t[3]);
        let w = (dt * dt + x * x * dx * dx).sqrt();
        let u = x + ph * dt / w;
        let v = ph * x * dx / w;
        let xp = (u * u + v * v).sqrt();
        let tp = t - x * v;
        CurveJet {
            x: [xp.f, xp.df, xp.ddf, 0.0],
            t: [tp.f, tp.df, tp.ddf, 0.0],
        }
    }
}

impl ProfileFn for PerturbedProfile {
    fn eval2(&self, s: f64) -> CurveJet {
        self.jets(s)
    }
    fn eval3(&self, s: f64) -> CurveJet {
        // third derivatives by differencing the exact second derivatives
        let mut j = self.jets(s);
        let h = 1e-5 * self.base.domain_length();
        let jp = self.jets(s + h);
        let jm = self.jets(s - h);
        j.x[3] = (jp.x[2] - jm.x[2]) / (2.0 * h);
        j.t[3] = (jp.t[2] - jm.t[2]) / (2.0 * h);
        j
    }
}

/// The rotationally invariant horizontally-normal graph S_L · φν_h:
/// with W = √(ṫ² + x²ẋ²),
///
///   x^φ = √((x + φṫ/W)² + (φxẋ/W)²),   t^φ = t − φx²ẋ/W.
///
/// Fails with [`Error::SelfIntersection`] when the perturbed radius or
/// regularity degenerates.
pub fn graph_perturbation(l: f64, phi: &TestFunction) -> Result<ProfileCurve> {
    let _ = pm_checked(l, phi)?;
    let base = make_surface(&SurfaceSpec::PansuMinkowski { l })?;
    let perturbed = ProfileCurve::new(
        base.domain(),
        base.characteristic_endpoints(),
        Arc::new(PerturbedProfile { base, phi: *phi }),
    );
    let base = make_surface(&SurfaceSpec::PansuMinkowski { l })?;
    let (a, b) = phi.support();
    for i in 0..400 {
        let s = a + (b - a) * (0.5 + i as f64) / 400.0;
        // the signed radial component x + φṫ/W must stay positive, or the
        // curve has crossed the rotation axis
        let jb = base.eval(s, 1);
        let w = (jb.t[1] * jb.t[1] + jb.x[0] * jb.x[0] * jb.x[1] * jb.x[1]).sqrt();
        let u = jb.x[0] + phi.eval(s) * jb.t[1] / w;
        let j = perturbed.eval(s, 1);
        let q = j.t[1] * j.t[1] + j.x[0] * j.x[0] * j.x[1] * j.x[1];
        if !(u > 0.0) || !(q > 0.0) || !j.x[0].is_finite() {
            return Err(Error::SelfIntersection { s });
        }
    }
    Ok(perturbed)
}

/// Which functional difference to take between a perturbed sphere and S_L.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DifferenceKind {
    Area,
    Tmc,
    /// tmc − 4L · area.
    Penalized,
}

/// Difference of a functional between the graph S_L · φν_h and S_L itself,
/// integrated as a single difference integrand over supp φ (the two surfaces
/// agree exactly outside the support). This avoids the cancellation of
/// differencing two large totals.
pub fn perturbed_functional_difference(
    l: f64,
    phi: &TestFunction,
    kind: DifferenceKind,
) -> Result<f64> {
    let _ = pm_checked(l, phi)?;
    let base = make_surface(&SurfaceSpec::PansuMinkowski { l })?;
    let pert = graph_perturbation(l, phi)?;
    let (a, b) = phi.support();
    let cfg = QuadratureConfig::tight();
    let d_area = || -> Result<f64> {
        Ok(2.0
            * PI
            * integrate(
                |s| area_integrand(&pert, s) - area_integrand(&base, s),
                a,
                b,
                &cfg,
            )?
            .value)
    };
    let d_tmc = || -> Result<f64> {
        Ok(2.0
            * PI
            * integrate(
                |s| tmc_integrand(&pert, s) - tmc_integrand(&base, s),
                a,
                b,
                &cfg,
            )?
            .value)
    };
    match kind {
        DifferenceKind::Area => d_area(),
        DifferenceKind::Tmc => d_tmc(),
        DifferenceKind::Penalized => Ok(d_tmc()? - 4.0 * l * d_area()?),
    }
}

/// Outcome of the area-matched local-minimality experiment.
#[derive(Clone, Copy, Debug)]
pub struct MinimalityRecord {
    /// Mixing coefficient that restores the unperturbed area.
    pub c: f64,
    /// Residual area difference after matching.
    pub area_defect: f64,
    /// tmc(perturbed) − tmc(S_L); expected nonnegative for small amplitudes.
    pub tmc_difference: f64,
}

/// Perturb S_L by a(φ1 + cφ2), solving for the mixing coefficient c with
/// |c| ≤ 10 so that the perturbed area matches area(S_L), then report the
/// total-mean-curvature difference.
pub fn local_minimality_experiment(
    l: f64,
    phi1: &TestFunction,
    phi2: &TestFunction,
    amplitude: f64,
) -> Result<MinimalityRecord> {
    if amplitude == 0.0 {
        return Ok(MinimalityRecord {
            c: 0.0,
            area_defect: 0.0,
            tmc_difference: 0.0,
        });
    }
    if amplitude.abs() > 1e-2 {
        return Err(Error::InvalidParameter(format!(
            "amplitude {amplitude} exceeds the 1e-2 validity bound"
        )));
    }
    let mixed = |c: f64| -> Result<TestFunction> { Ok(phi1.combine(phi2, c)?.scaled(amplitude)) };
    let area_defect_at = |c: f64| -> Result<f64> {
        perturbed_functional_difference(l, &mixed(c)?, DifferenceKind::Area)
    };

    // bracket the matching coefficient on a coarse grid of [-10, 10]
    let n_grid = 40;
    let mut prev_c = -10.0;
    let mut prev_v = area_defect_at(prev_c)?;
    let mut bracket = None;
    for i in 1..=n_grid {
        let c = -10.0 + 20.0 * i as f64 / n_grid as f64;
        let v = area_defect_at(c)?;
        if prev_v == 0.0 || prev_v.signum() != v.signum() {
            bracket = Some((prev_c, c));
            break;
        }
        prev_c = c;
        prev_v = v;
    }
    let (lo, hi) = bracket.ok_or(Error::NoBracket { a: -10.0, b: 10.0 })?;
    let c = find_root(|c| area_defect_at(c).unwrap_or(f64::NAN), lo, hi, 1e-13)?;
    let phi = mixed(c)?;
    Ok(MinimalityRecord {
        c,
        area_defect: perturbed_functional_difference(l, &phi, DifferenceKind::Area)?,
        tmc_difference: perturbed_functional_difference(l, &phi, DifferenceKind::Tmc)?,
    })
}

/// Support interval I(δ) = (−s_max + δ, s_max − δ) with the default margin
/// δ = 0.05 · s_max.
pub fn default_support(l: f64) -> Result<(f64, f64)> {
    let pm = PmParams::new(l)?;
    let delta = 0.05 * pm.s_max;
    Ok((-pm.s_max + delta, pm.s_max - delta))
}
