//! Special functions and Gauss–Jacobi quadrature.

mod gauss;
pub mod halfline;
mod hemisphere;
mod special;

pub use gauss::{integrate, EndpointWeight, GaussRule, QuadSpec};
pub use hemisphere::{AngularMode, HemisphereMeasure};
pub(crate) use hemisphere::sinc;
pub use special::{beta_fn, gamma_fn, kappa, ln_gamma, sphere_area};
