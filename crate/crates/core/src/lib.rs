//! Isoperimetric problems in the half-space ℝ^N_+ = {x_N > 0} for the
//! measures |x|^l x_N^α dx and perimeters |x|^k x_N^α dH^{N−1}.
//!
//! The crate computes half-ball constants, classifies (k, l, N, α) into the
//! regions where the centred half-ball is or is not optimal, evaluates the
//! second variation and the eigenvalue problems behind it, and checks the
//! rearrangement, Hardy and Caffarelli–Kohn–Nirenberg statements that feed
//! into the proofs. Everything is evaluated for star sets and radial or
//! gridded functions; there is no mesh of general domains.
//!
//! ```
//! use isoperim::geometry::{crad, rayleigh_ratio, AngularMode, StarSet, WeightParams};
//! let p = WeightParams::new(0.0, 0.0, 2, 0.0).unwrap();
//! let disc = StarSet::half_ball(AngularMode::Planar, 33, 1.0).unwrap();
//! assert!((rayleigh_ratio(&disc, &p).unwrap() - crad(&p).unwrap()).abs() < 1e-12);
//! ```

pub mod counterex;
pub mod error;
mod fd;
pub mod functional;
pub mod geometry;
pub mod orthant;
pub mod quad;
pub mod rearrange;
pub mod regions;
pub mod spectral;

pub use error::{Error, Result};
