//! Generic numerical kernels: adaptive quadrature (including
//! endpoint-singular integrals), a safeguarded root finder, and an adaptive
//! explicit ODE integrator. Nothing in here knows about leaf functions.
//!
//! All operations are pure given their inputs and safe to call from any
//! number of threads.

mod ode;
mod quad;
mod root;

pub use ode::{ode_integrate, OdeSign};
pub use quad::{integrate, integrate_singular_upper};
pub use root::{find_root, Bracket};

pub(crate) use quad::{even_power_sum, tanh_sinh};
