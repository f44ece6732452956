//! Adaptive Gauss-Legendre quadrature.
//!
//! Panels are integrated with a 15-point Gauss-Legendre rule; the error
//! estimate on a panel is the difference against the embedded-style 7-point
//! rule. Panels whose estimate exceeds their share of the budget are
//! bisected, the tolerance halving with each split, so the leaf estimates
//! sum below the requested tolerance. Summation runs left to right over the
//! final panels, which keeps results deterministic.

use crate::error::{Error, Result};

/// Tolerances and budgets for [`integrate`].
#[derive(Clone, Copy, Debug)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: u32,
    /// Nodes of the high-order panel rule. Only 15 is implemented.
    pub panel_order: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_subdivisions: 4096,
            panel_order: 15,
        }
    }
}

impl QuadratureConfig {
    /// Tighter tolerances for inner computations (derivative sampling,
    /// difference integrals) where the caller differences two results.
    pub fn tight() -> Self {
        QuadratureConfig {
            rel_tol: 1e-12,
            abs_tol: 1e-14,
            ..Default::default()
        }
    }
}

/// Value of an integral functional together with the accumulated error
/// estimate and the number of integrand evaluations spent on it.
#[derive(Clone, Copy, Debug)]
pub struct FunctionalResult {
    pub value: f64,
    pub err_est: f64,
    pub n_evals: u64,
}

impl FunctionalResult {
    pub fn exact(value: f64) -> Self {
        FunctionalResult {
            value,
            err_est: 0.0,
            n_evals: 0,
        }
    }
}

// 15-point Gauss-Legendre nodes and weights on [-1, 1] (symmetric halves).
#[allow(clippy::excessive_precision)]
const GL15_NODES: [f64; 15] = [
    -0.9879925180204854284896,
    -0.9372733924007059043078,
    -0.8482065834104272162006,
    -0.7244177313601700474162,
    -0.5709721726085388475372,
    -0.3941513470775633698972,
    -0.2011940939974345223006,
    0.0,
    0.2011940939974345223006,
    0.3941513470775633698972,
    0.5709721726085388475372,
    0.7244177313601700474162,
    0.8482065834104272162006,
    0.9372733924007059043078,
    0.9879925180204854284896,
];
#[allow(clippy::excessive_precision)]
const GL15_WEIGHTS: [f64; 15] = [
    0.03075324199611726835463,
    0.07036604748810812470927,
    0.1071592204671719350119,
    0.1395706779261543144478,
    0.1662692058169939335532,
    0.1861610000155622110268,
    0.1984314853271115764561,
    0.2025782419255612728806,
    0.1984314853271115764561,
    0.1861610000155622110268,
    0.1662692058169939335532,
    0.1395706779261543144478,
    0.1071592204671719350119,
    0.07036604748810812470927,
    0.03075324199611726835463,
];

// 7-point Gauss-Legendre companion rule used for the error estimate.
#[allow(clippy::excessive_precision)]
const GL7_NODES: [f64; 7] = [
    -0.9491079123427585245262,
    -0.7415311855993944398639,
    -0.4058451513773971669066,
    0.0,
    0.4058451513773971669066,
    0.7415311855993944398639,
    0.9491079123427585245262,
];
#[allow(clippy::excessive_precision)]
const GL7_WEIGHTS: [f64; 7] = [
    0.1294849661688696932706,
    0.2797053914892766679015,
    0.3818300505051189449504,
    0.4179591836734693877551,
    0.3818300505051189449504,
    0.2797053914892766679015,
    0.1294849661688696932706,
];

fn panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, evals: &mut u64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut v15 = 0.0;
    for (x, w) in GL15_NODES.iter().zip(GL15_WEIGHTS.iter()) {
        v15 += w * f(c + half * x);
    }
    let mut v7 = 0.0;
    for (x, w) in GL7_NODES.iter().zip(GL7_WEIGHTS.iter()) {
        v7 += w * f(c + half * x);
    }
    *evals += 22;
    (v15 * half, (v15 - v7).abs() * half)
}

struct Worker<'a, F> {
    f: &'a F,
    evals: u64,
    subdivisions: u32,
    max_subdivisions: u32,
    budget_exhausted: bool,
}

impl<'a, F: Fn(f64) -> f64> Worker<'a, F> {
    fn run(&mut self, a: f64, b: f64, tol: f64, depth: u32) -> (f64, f64) {
        let (v, e) = panel(self.f, a, b, &mut self.evals);
        if e <= tol || depth >= 52 {
            return (v, e);
        }
        if self.subdivisions >= self.max_subdivisions {
            self.budget_exhausted = true;
            return (v, e);
        }
        self.subdivisions += 1;
        let m = 0.5 * (a + b);
        let (vl, el) = self.run(a, m, 0.5 * tol, depth + 1);
        let (vr, er) = self.run(m, b, 0.5 * tol, depth + 1);
        (vl + vr, el + er)
    }
}

/// Integrate `f` over `[a, b]`.
///
/// `f` must be finite on the open interval; endpoint values are never
/// requested because Gauss nodes are interior. Fails with
/// [`Error::NoConvergence`] when the subdivision budget runs out before the
/// error estimate drops below `max(rel_tol * |value|, abs_tol)`.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<FunctionalResult> {
    if !(cfg.rel_tol > 0.0 && cfg.abs_tol > 0.0) {
        return Err(Error::InvalidParameter(
            "quadrature tolerances must be positive".into(),
        ));
    }
    if a == b {
        return Ok(FunctionalResult::exact(0.0));
    }

    let mut evals = 0u64;
    let (first, _) = panel(&f, a, b, &mut evals);
    let mut scale = first.abs();
    let mut total_evals = evals;

    // A second pass may be needed when the initial whole-interval estimate
    // badly over- or under-states the magnitude of the integral.
    for _ in 0..3 {
        let tol = (cfg.rel_tol * scale).max(cfg.abs_tol);
        let mut worker = Worker {
            f: &f,
            evals: 0,
            subdivisions: 0,
            max_subdivisions: cfg.max_subdivisions,
            budget_exhausted: false,
        };
        let (value, err_est) = worker.run(a, b, tol, 0);
        total_evals += worker.evals;
        if worker.budget_exhausted {
            return Err(Error::NoConvergence {
                a,
                b,
                err_est,
                subdivisions: worker.subdivisions,
            });
        }
        if err_est <= (cfg.rel_tol * value.abs()).max(cfg.abs_tol) {
            return Ok(FunctionalResult {
                value,
                err_est,
                n_evals: total_evals,
            });
        }
        scale = value.abs();
    }
    Err(Error::NoConvergence {
        a,
        b,
        err_est: f64::NAN,
        subdivisions: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn sin_squared_half_angle() {
        // closed form: pi
        let r = integrate(|s: f64| (s / 2.0).sin().powi(2), 0.0, 2.0 * PI, &cfg()).unwrap();
        assert!((r.value - PI).abs() < 1e-12, "{}", r.value);
        assert!(r.err_est <= 1e-10 * PI);
    }

    #[test]
    fn pansu_area_integrand() {
        // (1/2) sin^2(s/2) over (0, 2pi) integrates to pi/2; the 2pi angular
        // factor then gives the closed surface value pi^2.
        let r = integrate(
            |s: f64| 0.5 * (s / 2.0).sin().powi(2),
            0.0,
            2.0 * PI,
            &cfg(),
        )
        .unwrap();
        assert!((2.0 * PI * r.value - PI * PI).abs() < 1e-10);
    }

    #[test]
    fn sqrt_cos_is_beta_value() {
        // B(1/2, 3/4) = Gamma(1/2) Gamma(3/4) / Gamma(5/4)
        let r = integrate(|s: f64| s.cos().sqrt(), -PI / 2.0, PI / 2.0, &cfg()).unwrap();
        let g = super::super::special::gamma_fn;
        let expect = g(0.5).unwrap() * g(0.75).unwrap() / g(1.25).unwrap();
        assert!(
            (r.value - expect).abs() < 1e-9 * expect,
            "{} vs {expect}",
            r.value
        );
    }

    #[test]
    fn exact_on_high_degree_polynomials() {
        // one 15-node panel integrates degree 29 exactly
        let r = integrate(|x: f64| 30.0 * x.powi(29), 0.0, 1.0, &cfg()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-13);
    }

    #[test]
    fn reversed_limits_flip_sign() {
        let a = integrate(|x: f64| x.exp(), 0.0, 1.0, &cfg()).unwrap();
        let b = integrate(|x: f64| x.exp(), 1.0, 0.0, &cfg()).unwrap();
        assert!((a.value + b.value).abs() < 1e-13);
    }

    #[test]
    fn budget_exhaustion_reported() {
        let tiny = QuadratureConfig {
            rel_tol: 1e-14,
            abs_tol: 1e-16,
            max_subdivisions: 4,
            panel_order: 15,
        };
        let r = integrate(|x: f64| (1.0 / (x + 1e-8)).sqrt(), 0.0, 1.0, &tiny);
        assert!(matches!(r, Err(Error::NoConvergence { .. })));
    }
}
