use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Evaluation at or too close to the characteristic set, where the
    /// horizontal geometry degenerates (the denominator ṫ² + x²ẋ² or the
    /// radius x vanishes).
    #[error("characteristic point at s = {s} (denominator {denom:.3e})")]
    CharacteristicPoint { s: f64, denom: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Adaptive quadrature exhausted its subdivision budget.
    #[error("quadrature did not converge on [{a}, {b}]: error estimate {err_est:.3e} after {subdivisions} subdivisions")]
    NoConvergence {
        a: f64,
        b: f64,
        err_est: f64,
        subdivisions: u32,
    },

    #[error("no sign change of the target function on [{a}, {b}]")]
    NoBracket { a: f64, b: f64 },

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("surface is not strictly mean convex: H = {h_min:.3e} at s = {s:.6}")]
    NotStrictlyMeanConvex { s: f64, h_min: f64 },

    /// The horizontal mean curvature is below tolerance at every sample, so
    /// no multiplier can be fit.
    #[error("horizontal mean curvature is degenerate on all samples")]
    DegenerateH,

    #[error("perturbed profile self-intersects or loses regularity at s = {s}")]
    SelfIntersection { s: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
