//! Certification of the quasi-convexity hypotheses, shape classification,
//! the built-in function catalog and the seeded function generator.
//!
//! Certification is numerical: the sampled definition and the grid shape
//! must both agree before a hypothesis counts as certified. A rejection
//! comes with a counterexample triple and is a proof; an acceptance is
//! evidence only.

pub mod catalog;
mod check;
mod generator;
mod shape;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exprlang::RealFunction;
use crate::numerics::Interval;

pub use catalog::{lookup, CatalogEntry, CATALOG};
pub use check::{
    check_quasiconvex, violation, QuasiConvexityVerdict, Triple, DEFAULT_SAMPLES,
    DEFAULT_TOLERANCE,
};
pub use generator::{generate, Family, GeneratedFunction, GeneratorConfig};
pub use shape::{classify_shape, ShapeClass};

/// Grid used by the shape classifier during certification.
pub const SHAPE_GRID: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertifyOptions {
    pub samples: usize,
    pub tol: f64,
    pub shape_grid: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            samples: DEFAULT_SAMPLES,
            tol: DEFAULT_TOLERANCE,
            shape_grid: SHAPE_GRID,
        }
    }
}

/// Outcome of certifying that `|f'|^exponent` is quasi-convex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub exponent: f64,
    pub certified: bool,
    pub verdict: QuasiConvexityVerdict,
    pub shape: ShapeClass,
}

/// `t ↦ |f'(t)|^exponent`.
pub fn derivative_power<F: RealFunction + ?Sized>(
    f: &F,
    exponent: f64,
) -> impl Fn(f64) -> Result<f64> + '_ {
    move |t| {
        let d = f.derivative(t).map_err(Error::from)?;
        Ok(d.abs().powf(exponent))
    }
}

pub fn certify_derivative_power<F: RealFunction + ?Sized>(
    f: &F,
    iv: Interval,
    exponent: f64,
    opts: &CertifyOptions,
) -> Result<Certificate> {
    let g = derivative_power(f, exponent);
    let verdict = check_quasiconvex(&g, iv, opts.samples, opts.tol)?;
    let shape = classify_shape(&g, iv, opts.shape_grid, opts.tol)?;
    Ok(Certificate {
        exponent,
        certified: verdict.holds && shape.is_quasiconvex_pattern(),
        verdict,
        shape,
    })
}
