//! Second-order forward-mode differentiation.
//!
//! A [`Jet2`] carries a value together with its first and second derivative
//! with respect to a single scalar parameter. Arithmetic propagates the
//! derivatives exactly, so composite curve quantities (perturbed profiles,
//! the fundamental function along a profile) get machine-precision
//! derivatives without finite-difference noise.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet2 {
    pub f: f64,
    pub df: f64,
    pub ddf: f64,
}

impl Jet2 {
    pub const fn new(f: f64, df: f64, ddf: f64) -> Self {
        Jet2 { f, df, ddf }
    }

    /// Constant (zero derivatives).
    pub const fn constant(c: f64) -> Self {
        Jet2::new(c, 0.0, 0.0)
    }

    /// The independent variable itself.
    pub const fn variable(x: f64) -> Self {
        Jet2::new(x, 1.0, 0.0)
    }

    pub fn sqrt(self) -> Self {
        let f = self.f.sqrt();
        let df = self.df / (2.0 * f);
        let ddf = (self.ddf - 2.0 * df * df) / (2.0 * f);
        Jet2::new(f, df, ddf)
    }

    pub fn exp(self) -> Self {
        let e = self.f.exp();
        Jet2::new(e, self.df * e, (self.ddf + self.df * self.df) * e)
    }

    pub fn recip(self) -> Self {
        Jet2::constant(1.0) / self
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, o: Jet2) -> Jet2 {
        Jet2::new(self.f + o.f, self.df + o.df, self.ddf + o.ddf)
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, o: Jet2) -> Jet2 {
        Jet2::new(self.f - o.f, self.df - o.df, self.ddf - o.ddf)
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, o: Jet2) -> Jet2 {
        Jet2::new(
            self.f * o.f,
            self.df * o.f + self.f * o.df,
            self.ddf * o.f + 2.0 * self.df * o.df + self.f * o.ddf,
        )
    }
}

impl Div for Jet2 {
    type Output = Jet2;
    fn div(self, o: Jet2) -> Jet2 {
        let f = self.f / o.f;
        let df = (self.df - f * o.df) / o.f;
        let ddf = (self.ddf - 2.0 * df * o.df - f * o.ddf) / o.f;
        Jet2::new(f, df, ddf)
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        Jet2::new(-self.f, -self.df, -self.ddf)
    }
}

impl Mul<f64> for Jet2 {
    type Output = Jet2;
    fn mul(self, c: f64) -> Jet2 {
        Jet2::new(self.f * c, self.df * c, self.ddf * c)
    }
}

impl Add<f64> for Jet2 {
    type Output = Jet2;
    fn add(self, c: f64) -> Jet2 {
        Jet2::new(self.f + c, self.df, self.ddf)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jet_matches_analytic_derivatives() {
        // y(x) = sqrt(x^2 + 1/x) at x = 1.3
        let x = Jet2::variable(1.3);
        let y = (x * x + x.recip()).sqrt();
        let g = |x: f64| (x * x + 1.0 / x).sqrt();
        let h = 1e-5;
        let d1 = (g(1.3 + h) - g(1.3 - h)) / (2.0 * h);
        let d2 = (g(1.3 + h) - 2.0 * g(1.3) + g(1.3 - h)) / (h * h);
        assert!((y.f - g(1.3)).abs() < 1e-15);
        assert!((y.df - d1).abs() < 1e-9);
        assert!((y.ddf - d2).abs() < 1e-5);
    }

    #[test]
    fn exp_jet() {
        let x = Jet2::variable(0.7);
        let y = (-(x * x)).exp();
        let f = (-0.49f64).exp();
        assert!((y.f - f).abs() < 1e-15);
        assert!((y.df - (-2.0 * 0.7 * f)).abs() < 1e-14);
        assert!((y.ddf - ((4.0 * 0.49 - 2.0) * f)).abs() < 1e-14);
    }
}
