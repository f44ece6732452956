//! Numerical toolkit for mean-curvature variational problems on rotationally
//! invariant surfaces in the first Heisenberg group.
//!
//! The crate evaluates the sub-Riemannian area, total mean curvature, total
//! inverse mean curvature and enclosed volume of surfaces of revolution from
//! their profile curves, solves and verifies the constrained-stationarity
//! Euler-Lagrange system (whose closed solutions form a one-parameter family
//! of spheres), computes second-variation quadratic forms with coercivity
//! bounds and angular instability thresholds, and checks the Riemannian
//! metric approximation of the horizontal quantities.
//!
//! Entry points:
//! - [`catalog`]: constructors for the named surfaces and families,
//! - [`functionals`]: integral functionals and scale-invariant quotients,
//! - [`euler_lagrange`]: stationarity residuals and the graphical ODE,
//! - [`variation`]: stability, instability and local-minimality experiments,
//! - [`approximation`]: the Riemannian metric approximation,
//! - [`verify`]: the full verification battery with per-claim tolerances.

// `!(x > 0.0)` is used deliberately in parameter guards: it rejects NaN
// along with the out-of-range values, which `x <= 0.0` would let through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod approximation;
pub mod catalog;
pub mod error;
pub mod euler_lagrange;
pub mod functionals;
pub mod geometry;
pub mod numerics;
pub mod variation;
pub mod verify;

pub use error::{Error, Result};
pub use geometry::{CurveJet, GeometryPoint, ProfileCurve};
pub use numerics::quad::{FunctionalResult, QuadratureConfig};
