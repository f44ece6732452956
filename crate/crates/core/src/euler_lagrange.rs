//! The constrained-stationarity Euler-Lagrange system for the total mean
//! curvature under an area constraint, its residuals, multiplier fits, and
//! the graphical reduction solved as an ODE in the normalized slope.
//!
//! Stationarity with multiplier Λ = 4L reads, along a profile,
//!
//!   x ṫ (ẋ²ṫ − x(ẋẗ − ẍṫ)) + L √(x²ẋ² + ṫ²) (x³(ẋẗ − ẍṫ) + ṫ³) = 0,
//!
//! equivalently −4(J(ν_h)α + α²) = Λ H pointwise. For a vertical graph
//! t = t(s) with slope w = ṫ, the substitution z = w/√(w² + s²) turns the
//! equation into ż = Lz/(z − Ls) with the algebraic invariant
//! z² − 2Lsz + 2L − 1 = 0 along solutions meeting the verticality condition
//! z(1) = 1.

use crate::error::{Error, Result};
use crate::geometry::{self, ProfileCurve};
use crate::numerics::ode::{solve_scalar_ivp, OdeConfig, Trajectory};
use crate::numerics::quad::{integrate, QuadratureConfig};

/// Residual of the full Euler-Lagrange display at one parameter value.
/// `scale` is the magnitude of the largest single term, so
/// `residual/scale` is a dimensionless defect.
#[derive(Clone, Copy, Debug)]
pub struct ElResidualSample {
    pub s: f64,
    pub residual: f64,
    pub scale: f64,
}

impl ElResidualSample {
    pub fn defect(&self) -> f64 {
        if self.scale > 0.0 {
            self.residual.abs() / self.scale
        } else {
            self.residual.abs()
        }
    }
}

/// Evaluate the Euler-Lagrange residual with multiplier Λ = 4L at `s`.
pub fn el_residual(profile: &ProfileCurve, l: f64, s: f64) -> ElResidualSample {
    let j = profile.eval(s, 2);
    let (x, dx, ddx) = (j.x[0], j.x[1], j.x[2]);
    let (dt, ddt) = (j.t[1], j.t[2]);
    let kappa = dx * ddt - ddx * dt;
    let term1 = x * dt * (dx * dx * dt - x * kappa);
    let term2 = l * (x * x * dx * dx + dt * dt).sqrt() * (x.powi(3) * kappa + dt.powi(3));
    ElResidualSample {
        s,
        residual: term1 + term2,
        scale: term1.abs().max(term2.abs()),
    }
}

/// Least-squares multiplier fit for −4(J(ν_h)α + α²) = Λ H.
#[derive(Clone, Copy, Debug)]
pub struct MultiplierFit {
    pub lambda: f64,
    pub max_deviation: f64,
    pub n_samples: usize,
}

/// Fit Λ as the least-squares constant through the pointwise ratios
/// −4(J(ν_h)α + α²)/H over 100 interior samples. A small `max_deviation`
/// certifies stationarity; samples with |H| below 1e-9 are skipped.
pub fn el_multiplier(profile: &ProfileCurve) -> Result<MultiplierFit> {
    let (a, b) = profile.domain();
    let len = b - a;
    let n = 100;
    let mut ratios = Vec::with_capacity(n);
    for i in 0..n {
        let s = a + len * (0.5 + i as f64) / n as f64;
        let h = match geometry::horizontal_mean_curvature(profile, s) {
            Ok(h) => h,
            Err(_) => continue,
        };
        if h.abs() < 1e-9 {
            continue;
        }
        let jv = geometry::jv_alpha_plus_alpha_sq(profile, s)?;
        ratios.push(-4.0 * jv / h);
    }
    if ratios.is_empty() {
        return Err(Error::DegenerateH);
    }
    let lambda = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let max_deviation = ratios
        .iter()
        .map(|r| (r - lambda).abs())
        .fold(0.0f64, f64::max);
    Ok(MultiplierFit {
        lambda,
        max_deviation,
        n_samples: ratios.len(),
    })
}

/// Closed-form positive branch z(s) = Ls + √(L²s² − 2L + 1).
pub fn z_closed_form(l: f64, s: f64) -> f64 {
    l * s + (l * l * s * s - 2.0 * l + 1.0).sqrt()
}

/// Closed-form graph slope
/// w(s) = (s/√(2L)) √((Ls² − 2L + 1 + s√(L²s² − 2L + 1))/(1 − s²)).
pub fn w_closed_form(l: f64, s: f64) -> f64 {
    let d = (l * l * s * s - 2.0 * l + 1.0).sqrt();
    s / (2.0 * l).sqrt() * ((l * s * s - 2.0 * l + 1.0 + s * d) / (1.0 - s * s)).sqrt()
}

/// State of the graphical reduction at one abscissa: the normalized slope
/// z = w/√(w² + s²) and the value of the algebraic invariant.
#[derive(Clone, Copy, Debug)]
pub struct ZState {
    pub s: f64,
    pub z: f64,
    /// z² − 2Lsz + 2L − 1; vanishes along exact solutions.
    pub conserved: f64,
}

/// Solved graphical trajectory in the z-variable, queryable for z, w, and
/// the conserved quantity.
#[derive(Clone, Debug)]
pub struct GraphSolution {
    pub l: f64,
    pub trajectory: Trajectory,
}

impl GraphSolution {
    pub fn z(&self, s: f64) -> Result<f64> {
        self.trajectory.value(s)
    }

    pub fn state(&self, s: f64) -> Result<ZState> {
        let z = self.z(s)?;
        Ok(ZState {
            s,
            z,
            conserved: z * z - 2.0 * self.l * s * z + 2.0 * self.l - 1.0,
        })
    }

    /// w = s z / √(1 − z²).
    pub fn w(&self, s: f64) -> Result<f64> {
        let z = self.z(s)?;
        Ok(s * z / (1.0 - z * z).sqrt())
    }

    /// z² − 2Lsz + 2L − 1 at `s`; vanishes along exact solutions.
    pub fn conserved(&self, s: f64) -> Result<f64> {
        let z = self.z(s)?;
        Ok(z * z - 2.0 * self.l * s * z + 2.0 * self.l - 1.0)
    }

    /// Largest |conserved| over the accepted integration nodes.
    pub fn max_conserved_defect(&self) -> f64 {
        self.trajectory
            .nodes
            .iter()
            .map(|&(s, z, _)| (z * z - 2.0 * self.l * s * z + 2.0 * self.l - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// Integrate ż = Lz/(z − Ls) from z(from_s) on the positive algebraic
/// branch down to s = 1e-6. Requires L ∈ (0, 1); for L > 1/2 the branch
/// discriminant L²s² − 2L + 1 turns negative inside (0, 1) and the
/// verticality problem has no C¹ solution.
pub fn solve_graphical_el(l: f64, from_s: f64) -> Result<GraphSolution> {
    if !(l > 0.0 && l < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "graphical reduction requires L in (0, 1), got {l}"
        )));
    }
    if !(from_s > 0.0 && from_s < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "starting offset must lie in (0, 1), got {from_s}"
        )));
    }
    if l > 0.5 {
        // discriminant at s = 0 is 1 - 2L < 0
        return Err(Error::NoSolution(format!(
            "L = {l} > 1/2: the slope discriminant L²s² − 2L + 1 is negative near s = 0"
        )));
    }
    let trajectory = integrate_z_trajectory(l, from_s, 1e-6)?;
    Ok(GraphSolution { l, trajectory })
}

/// Raw backward integration of the z-equation without the L ≤ 1/2 guard;
/// the trajectory simply stops where the right side degenerates. Used to
/// check that z never reaches −1 at an interior s (no toroidal solutions).
pub fn integrate_z_trajectory(l: f64, from_s: f64, to_s: f64) -> Result<Trajectory> {
    let z0 = z_closed_form(l, from_s);
    if !z0.is_finite() {
        return Err(Error::NoSolution(format!(
            "no real slope branch at s = {from_s} for L = {l}"
        )));
    }
    solve_scalar_ivp(
        |s, z| l * z / (z - l * s),
        from_s,
        z0,
        to_s,
        &OdeConfig::default(),
    )
}

/// Multiplier and defect of the constant-curvature reduction of the
/// volume-constrained stationarity condition, 4(J(ν_h)α + α²)/H² + 2 = Λ̂.
/// Meaningful on constant-H surfaces, where the second-order term of the
/// full condition vanishes identically.
#[derive(Clone, Copy, Debug)]
pub struct HkResidual {
    pub lambda_hat: f64,
    pub defect: f64,
}

pub fn hk_el_residual(profile: &ProfileCurve) -> Result<HkResidual> {
    let (a, b) = profile.domain();
    let len = b - a;
    let n = 100;
    let mut vals = Vec::with_capacity(n);
    for i in 0..n {
        let s = a + len * (0.5 + i as f64) / n as f64;
        let h = match geometry::horizontal_mean_curvature(profile, s) {
            Ok(h) => h,
            Err(_) => continue,
        };
        if h.abs() < 1e-9 {
            continue;
        }
        let jv = geometry::jv_alpha_plus_alpha_sq(profile, s)?;
        vals.push(4.0 * jv / (h * h) + 2.0);
    }
    if vals.is_empty() {
        return Err(Error::DegenerateH);
    }
    let lambda_hat = vals.iter().sum::<f64>() / vals.len() as f64;
    let defect = vals
        .iter()
        .map(|v| (v - lambda_hat).abs())
        .fold(0.0f64, f64::max);
    Ok(HkResidual { lambda_hat, defect })
}

/// Height of the upper graph rebuilt from the closed-form slope,
/// t⁺(σ) = ∫_σ¹ w dξ, measured from the equator. The substitution
/// ξ = 1 − v² removes the verticality singularity: with num(ξ) =
/// Lξ² − 2L + 1 + ξ√(L²ξ² − 2L + 1),
///
///   t⁺(σ) = ∫₀^{√(1−σ)} 2(1 − v²) √(num(1 − v²)/(2L(2 − v²))) dv.
pub fn rebuilt_upper_graph_height(l: f64, sigma: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if !(l > 0.0 && l <= 0.5) {
        return Err(Error::InvalidParameter(format!(
            "rebuild requires L in (0, 1/2], got {l}"
        )));
    }
    if !(0.0..=1.0).contains(&sigma) {
        return Err(Error::InvalidParameter(format!(
            "graph abscissa must lie in [0, 1], got {sigma}"
        )));
    }
    let vmax = (1.0 - sigma).sqrt();
    let r = integrate(
        |v| {
            let xi = 1.0 - v * v;
            let d = (l * l * xi * xi - 2.0 * l + 1.0).sqrt();
            let num = l * xi * xi - 2.0 * l + 1.0 + xi * d;
            2.0 * xi * (num / (2.0 * l * (2.0 - v * v))).sqrt()
        },
        0.0,
        vmax,
        cfg,
    )?;
    Ok(r.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_surface, PmParams, SurfaceSpec};
    use crate::functionals::{pm_area_closed, pm_tmc_closed};
    use crate::numerics::root::find_root;

    #[test]
    fn pm_profiles_satisfy_el() {
        for l in [0.05, 0.1, 0.25, 0.4, 0.5] {
            let p = make_surface(&SurfaceSpec::PansuMinkowski { l }).unwrap();
            let (a, b) = p.domain();
            for i in 0..50 {
                let s = a + (b - a) * (0.5 + i as f64) / 50.0;
                let r = el_residual(&p, l, s);
                assert!(r.defect() < 1e-9, "L={l} s={s}: defect {}", r.defect());
            }
        }
    }

    #[test]
    fn pansu_parametrization_satisfies_el_at_half() {
        // the (0, 2pi) sphere parametrization is a reparametrization of the
        // L = 1/2 member; the equation is reparametrization-covariant
        let p = make_surface(&SurfaceSpec::Pansu { radius: 1.0 }).unwrap();
        for i in 0..50 {
            let s = 0.05 + (2.0 * std::f64::consts::PI - 0.1) * i as f64 / 49.0;
            let r = el_residual(&p, 0.5, s);
            assert!(r.defect() < 1e-9, "s={s}: {}", r.defect());
        }
    }

    #[test]
    fn plane_and_cylinder_are_minimal_solutions() {
        let plane = make_surface(&SurfaceSpec::Plane).unwrap();
        let cyl = make_surface(&SurfaceSpec::Cylinder { radius: 1.0 }).unwrap();
        for i in 0..20 {
            let s = 0.05 + 0.9 * i as f64 / 19.0;
            assert_eq!(el_residual(&plane, 0.0, s * 2.0).residual, 0.0);
            assert_eq!(el_residual(&cyl, 0.0, s).residual, 0.0);
        }
    }

    #[test]
    fn multiplier_of_critical_spheres() {
        let p = make_surface(&SurfaceSpec::PansuMinkowski { l: 0.25 }).unwrap();
        let fit = el_multiplier(&p).unwrap();
        assert!((fit.lambda - 1.0).abs() < 1e-8, "{}", fit.lambda);
        assert!(fit.max_deviation < 1e-8);

        let p = make_surface(&SurfaceSpec::Pansu { radius: 1.0 }).unwrap();
        let fit = el_multiplier(&p).unwrap();
        assert!((fit.lambda - 2.0).abs() < 1e-8, "{}", fit.lambda);
        assert!(fit.max_deviation < 1e-8);
    }

    #[test]
    fn multiplier_oracle_at_hand_picked_points() {
        // pointwise ratio -4(J(nu)a + a^2)/H must equal 4L at any interior
        // point of the critical family
        let l = 0.25;
        let p = make_surface(&SurfaceSpec::PansuMinkowski { l }).unwrap();
        for s in [-0.6, -0.2, 0.1, 0.4, 0.7] {
            let jv = geometry::jv_alpha_plus_alpha_sq(&p, s).unwrap();
            let h = geometry::horizontal_mean_curvature(&p, s).unwrap();
            assert!((-4.0 * jv / h - 4.0 * l).abs() < 1e-12);
        }
    }

    #[test]
    fn koranyi_is_not_stationary() {
        let p = make_surface(&SurfaceSpec::Koranyi { radius: 1.0 }).unwrap();
        let fit = el_multiplier(&p).unwrap();
        assert!(fit.max_deviation > 1e-2, "{}", fit.max_deviation);
    }

    #[test]
    fn degenerate_h_rejected() {
        let p = make_surface(&SurfaceSpec::Plane).unwrap();
        assert!(matches!(el_multiplier(&p), Err(Error::DegenerateH)));
    }

    #[test]
    fn graphical_solution_matches_closed_form() {
        for l in [0.1, 0.25, 0.5] {
            let sol = solve_graphical_el(l, 1.0 - 1e-6).unwrap();
            assert!(sol.max_conserved_defect() < 1e-9, "L={l}");
            for i in 0..20 {
                let s = 0.02 + 0.95 * i as f64 / 19.0;
                let w = sol.w(s).unwrap();
                let wc = w_closed_form(l, s);
                assert!(
                    (w - wc).abs() < 1e-8 * wc.abs().max(1.0),
                    "L={l} s={s}: {w} vs {wc}"
                );
                assert!(sol.conserved(s).unwrap().abs() < 1e-9);
            }
        }
    }

    #[test]
    fn no_solution_above_half() {
        assert!(matches!(
            solve_graphical_el(0.6, 1.0 - 1e-6),
            Err(Error::NoSolution(_))
        ));
        assert!(matches!(
            solve_graphical_el(1.2, 1.0 - 1e-6),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn torus_exclusion_z_never_reaches_minus_one() {
        for l in [0.1, 0.3, 0.5, 0.7, 0.9] {
            let t = integrate_z_trajectory(l, 1.0 - 1e-6, 1e-6).unwrap();
            let min_z = t.nodes.iter().map(|n| n.1).fold(f64::INFINITY, f64::min);
            assert!(min_z > -0.5, "L={l}: min z = {min_z}");
        }
    }

    #[test]
    fn rebuilt_graphs_reproduce_catalog_profiles() {
        // the closed-form slope integrates back to the catalog curve;
        // compare the graph abscissa recovered at the catalog heights,
        // away from the equator
        let cfg = QuadratureConfig::tight();
        for l in [0.1, 0.25, 0.5] {
            let pm = PmParams::new(l).unwrap();
            let p = make_surface(&SurfaceSpec::PansuMinkowski { l }).unwrap();
            for i in 0..7 {
                let s = pm.s_max * (0.1 + 0.8 * i as f64 / 6.0);
                let j = p.eval(s, 0);
                let sigma = find_root(
                    |g| rebuilt_upper_graph_height(l, g.clamp(0.0, 1.0), &cfg).unwrap() - j.t[0],
                    0.0,
                    1.0 - 1e-3,
                    1e-12,
                )
                .unwrap();
                assert!(
                    (sigma - j.x[0]).abs() < 1e-7,
                    "L={l} s={s}: {sigma} vs {}",
                    j.x[0]
                );
            }
        }
    }

    #[test]
    fn hk_residual_of_constant_curvature_sphere() {
        let p = make_surface(&SurfaceSpec::Pansu { radius: 1.0 }).unwrap();
        let r = hk_el_residual(&p).unwrap();
        // J(nu)a + a^2 = -1 and H = 2 give 4(-1)/4 + 2 = 1
        assert!((r.lambda_hat - 1.0).abs() < 1e-8, "{}", r.lambda_hat);
        assert!(r.defect < 1e-8);

        // dilation invariance of the combination
        let d = make_surface(&SurfaceSpec::Dilated {
            base: Box::new(SurfaceSpec::Pansu { radius: 1.0 }),
            lambda: 2.0,
        })
        .unwrap();
        let rd = hk_el_residual(&d).unwrap();
        assert!((rd.lambda_hat - 1.0).abs() < 1e-8);
        assert!(rd.defect < 1e-8);

        // translation invariance
        let t = make_surface(&SurfaceSpec::Translated {
            base: Box::new(SurfaceSpec::Pansu { radius: 1.0 }),
            dt: 2.5,
        })
        .unwrap();
        let rt = hk_el_residual(&t).unwrap();
        assert!((rt.lambda_hat - 1.0).abs() < 1e-8);
        assert!(rt.defect < 1e-8);
    }

    #[test]
    fn quarter_is_unique_unconstrained_critical_point() {
        // 4L - (2/3) tmc/area changes sign only at L = 1/4
        let f =
            |l: f64| 4.0 * l - 2.0 * pm_tmc_closed(l).unwrap() / (3.0 * pm_area_closed(l).unwrap());
        let mut sign_changes = 0;
        let mut prev = f(0.01);
        for i in 1..200 {
            let l = 0.01 + (0.5 - 0.01) * i as f64 / 199.0;
            let v = f(l);
            if (l - 0.25).abs() > 1e-3 {
                assert!(v.abs() > 1e-12, "L={l}");
            }
            if v.signum() != prev.signum() {
                sign_changes += 1;
            }
            prev = v;
        }
        assert_eq!(sign_changes, 1);
        assert!(f(0.25).abs() < 1e-14);
    }

    #[test]
    fn defect_normalization() {
        let r = ElResidualSample {
            s: 0.0,
            residual: 2.0,
            scale: 4.0,
        };
        assert_eq!(r.defect(), 0.5);
        let zero = ElResidualSample {
            s: 0.0,
            residual: 0.0,
            scale: 0.0,
        };
        assert_eq!(zero.defect(), 0.0);
    }
}
