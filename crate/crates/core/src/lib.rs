//! Numerical laboratory for boundary Harnack estimates with a right-hand side.
//!
//! The crate computes homogeneity exponents of cones, solves the model
//! elliptic problems on cones, sectors and Lipschitz graph domains with a
//! cut-cell finite-difference scheme, and turns the solutions into the
//! quantities that decide whether a positive harmonic function controls a
//! supersolution: sup-ratio profiles, growth exponents, dyadic increments,
//! Weiss energies and Hölder quotients. A Hele-Shaw module applies the same
//! machinery to corner wetting.
//!
//! See the `examples/` directory of this crate for one runnable program per
//! capability.

pub mod analysis;
pub mod elliptic;
pub mod error;
pub mod geometry;
pub mod heleshaw;
pub mod runner;
pub mod spectral;

pub use error::{Error, Result};
