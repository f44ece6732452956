//! Shared numerical machinery: quadrature, finite differences, root finding,
//! the gamma function and second-order forward-mode jets.

pub mod diff;
pub mod jet;
pub mod ode;
pub mod quad;
pub mod root;
pub mod special;

pub use diff::{derivative, FdConfig};
pub use jet::Jet2;
pub use quad::{integrate, FunctionalResult, QuadratureConfig};
pub use root::find_root;
pub use special::gamma_fn;
