//! Numerical verification of Hermite–Hadamard type inequalities for
//! functions whose derivative magnitude is quasi-convex.
//!
//! The crate is organised bottom-up:
//!
//! * [`exprlang`] parses `f(x)` and differentiates it with dual numbers,
//! * [`numerics`] provides adaptive quadrature, bounded minimization and grid scans,
//! * [`quasiconvexity`] certifies the quasi-convexity hypotheses and ships a
//!   function catalog plus a seeded generator,
//! * [`hhbounds`] evaluates the identity residual and every bound,
//! * [`analysis`] sweeps the free point `x`, optimizes it and runs fuzz campaigns,
//! * [`cli`] is the command-line front end.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod exprlang;
pub mod hhbounds;
pub mod numerics;
pub mod quasiconvexity;

pub use error::{Error, Result};
