//! Finite-difference derivatives.

/// Step control for [`derivative`]. The step is relative: the actual step is
/// `h * max(|x0|, 1)`.
#[derive(Clone, Copy, Debug)]
pub struct FdConfig {
    pub h: f64,
    /// Stencil order; 2 and 4 are supported.
    pub order: u32,
}

impl Default for FdConfig {
    fn default() -> Self {
        FdConfig { h: 1e-5, order: 4 }
    }
}

/// Central-difference derivative of `f` at `x0`.
pub fn derivative<F: Fn(f64) -> f64>(f: F, x0: f64, cfg: &FdConfig) -> f64 {
    let h = cfg.h * x0.abs().max(1.0);
    match cfg.order {
        2 => (f(x0 + h) - f(x0 - h)) / (2.0 * h),
        _ => (8.0 * (f(x0 + h) - f(x0 - h)) - (f(x0 + 2.0 * h) - f(x0 - 2.0 * h))) / (12.0 * h),
    }
}

/// Five-point central-difference value/first/second derivative of a scalar
/// function, used to synthesize profile derivatives from bare coordinates.
pub fn jet2_by_differences<F: Fn(f64) -> f64>(f: &F, x0: f64, h: f64) -> (f64, f64, f64) {
    let fm2 = f(x0 - 2.0 * h);
    let fm1 = f(x0 - h);
    let f0 = f(x0);
    let fp1 = f(x0 + h);
    let fp2 = f(x0 + 2.0 * h);
    let d1 = (8.0 * (fp1 - fm1) - (fp2 - fm2)) / (12.0 * h);
    let d2 = (16.0 * (fp1 + fm1) - 30.0 * f0 - (fp2 + fm2)) / (12.0 * h * h);
    (f0, d1, d2)
}

/// Third derivative by the five-point central stencil, O(h²).
pub fn third_derivative_by_differences<F: Fn(f64) -> f64>(f: &F, x0: f64, h: f64) -> f64 {
    let fm2 = f(x0 - 2.0 * h);
    let fm1 = f(x0 - h);
    let fp1 = f(x0 + h);
    let fp2 = f(x0 + 2.0 * h);
    (fp2 - 2.0 * fp1 + 2.0 * fm1 - fm2) / (2.0 * h * h * h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_of_sin_at_zero() {
        let d = derivative(f64::sin, 0.0, &FdConfig::default());
        assert!((d - 1.0).abs() < 1e-11);
    }

    #[test]
    fn derivative_of_cube_at_one() {
        let d = derivative(|x: f64| x.powi(3), 1.0, &FdConfig::default());
        assert!((d - 3.0).abs() < 1e-10);
    }

    #[test]
    fn jet_by_differences_on_exp() {
        let (f0, d1, d2) = jet2_by_differences(&f64::exp, 0.4, 1e-4);
        let e = 0.4f64.exp();
        assert!((f0 - e).abs() < 1e-15);
        assert!((d1 - e).abs() < 1e-10);
        assert!((d2 - e).abs() < 1e-6);
    }

    #[test]
    fn third_derivative_of_sine() {
        let d3 = third_derivative_by_differences(&f64::sin, 0.3, 1e-3);
        assert!((d3 + 0.3f64.cos()).abs() < 1e-5);
    }

    #[test]
    fn derivative_composes_with_quadrature_defined_functions() {
        // d/dR of the Minkowski quotient along the stretched-sphere family,
        // each evaluation being a quadrature
        use crate::functionals::{quotients, Family};
        use crate::numerics::quad::QuadratureConfig;
        let cfg = QuadratureConfig::tight();
        let f = |r: f64| {
            quotients(&Family::PansuR.spec(r), &cfg)
                .map(|q| q.mink_quotient)
                .unwrap_or(f64::NAN)
        };
        let d = derivative(f, 1.0, &FdConfig { h: 1e-4, order: 4 });
        let expect = std::f64::consts::PI.powf(2.0 / 3.0);
        assert!((d - expect).abs() < 1e-5 * expect, "{d} vs {expect}");
    }
}
