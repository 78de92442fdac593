//! Built-in regression functions, addressable as `catalog:<name>`.
//!
//! Each entry carries its default interval. Intervals are chosen so that `f`
//! is differentiable on all of `[a, b]` (for `sqrtabs` that rules out 0);
//! `absshift` keeps its kink, where `abs'(0) = 0` applies.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exprlang::{parse, Expression};
use crate::numerics::Interval;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub source: &'static str,
    pub a: f64,
    pub b: f64,
    /// `f` is convex on `[a, b]`.
    pub convex: bool,
    /// `f` itself is quasi-convex on `[a, b]`.
    pub quasiconvex: bool,
    /// `|f'|` is quasi-convex on `[a, b]`, the hypothesis of the bounds.
    pub derivative_quasiconvex: bool,
    /// Deliberately fails a hypothesis or the classical ordering.
    pub foil: bool,
    pub note: &'static str,
}

pub const CATALOG: [CatalogEntry; 9] = [
    CatalogEntry {
        name: "identity",
        source: "x",
        a: 0.0,
        b: 1.0,
        convex: true,
        quasiconvex: true,
        derivative_quasiconvex: true,
        foil: false,
        note: "affine; equality case of the bounds at the endpoints",
    },
    CatalogEntry {
        name: "square",
        source: "x^2",
        a: -1.0,
        b: 1.0,
        convex: true,
        quasiconvex: true,
        derivative_quasiconvex: true,
        foil: false,
        note: "|f'| = 2|u| is a valley",
    },
    CatalogEntry {
        name: "cube",
        source: "x^3",
        a: -1.0,
        b: 1.0,
        convex: false,
        quasiconvex: true,
        derivative_quasiconvex: true,
        foil: false,
        note: "monotone, not convex; |f'| = 3u^2 is a valley",
    },
    CatalogEntry {
        name: "exp",
        source: "exp(x)",
        a: 0.0,
        b: 1.0,
        convex: true,
        quasiconvex: true,
        derivative_quasiconvex: true,
        foil: false,
        note: "|f'| monotone",
    },
    CatalogEntry {
        name: "sqrtabs",
        source: "sqrt(abs(x))",
        a: 0.25,
        b: 4.0,
        convex: false,
        quasiconvex: true,
        derivative_quasiconvex: true,
        foil: false,
        note: "quasi-convex, not convex; interval avoids the cusp at 0",
    },
    CatalogEntry {
        name: "absshift",
        source: "abs(x - 0.3)",
        a: 0.0,
        b: 1.0,
        convex: true,
        quasiconvex: true,
        derivative_quasiconvex: true,
        foil: false,
        note: "kink at 0.3; |f'| = 1 away from it",
    },
    CatalogEntry {
        name: "neglog",
        source: "-log(x)",
        a: 0.5,
        b: 2.0,
        convex: true,
        quasiconvex: true,
        derivative_quasiconvex: true,
        foil: false,
        note: "|f'| = 1/u monotone",
    },
    CatalogEntry {
        name: "negsquare",
        source: "-x^2",
        a: -1.0,
        b: 1.0,
        convex: false,
        quasiconvex: false,
        derivative_quasiconvex: true,
        foil: true,
        note: "FOIL: concave, fails quasi-convexity and the classical ordering; |f'| is still a valley",
    },
    CatalogEntry {
        name: "sin10",
        source: "sin(10*x)",
        a: 0.0,
        b: 1.0,
        convex: false,
        quasiconvex: false,
        derivative_quasiconvex: false,
        foil: true,
        note: "FOIL: oscillating; |f'| is not quasi-convex",
    },
];

impl CatalogEntry {
    pub fn expression(&self) -> Expression {
        parse(self.source).expect("catalog sources parse")
    }

    pub fn interval(&self) -> Interval {
        Interval::new(self.a, self.b).expect("catalog intervals are valid")
    }

    pub fn id(&self) -> String {
        format!("catalog:{}", self.name)
    }
}

pub fn lookup(name: &str) -> Result<&'static CatalogEntry> {
    let key = name.strip_prefix("catalog:").unwrap_or(name);
    CATALOG
        .iter()
        .find(|e| e.name == key)
        .ok_or_else(|| Error::UnknownCatalogEntry(name.to_string()))
}
