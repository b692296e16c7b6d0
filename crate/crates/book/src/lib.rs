//! Compiles every chapter of the guide in book/ as doc-tests, so the snippets
//! stay in sync with the library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/quadrature.md")]
pub mod quadrature {}
#[doc = include_str!("../../../book/src/star-sets.md")]
pub mod star_sets {}
#[doc = include_str!("../../../book/src/regions.md")]
pub mod regions {}
#[doc = include_str!("../../../book/src/stability.md")]
pub mod stability {}
#[doc = include_str!("../../../book/src/rearrangements.md")]
pub mod rearrangements {}
#[doc = include_str!("../../../book/src/functionals.md")]
pub mod functionals {}
#[doc = include_str!("../../../book/src/counterexample.md")]
pub mod counterexample {}
#[doc = include_str!("../../../book/src/orthant.md")]
pub mod orthant {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
