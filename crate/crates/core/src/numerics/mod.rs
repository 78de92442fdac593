//! Quadrature, bounded scalar minimization and uniform grid scans.

mod minimize;
mod quadrature;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use minimize::{minimize_scalar, MinimizationResult, COARSE_GRID_POINTS};
pub use quadrature::{integrate_adaptive, QuadratureResult, EXACT_DEGREE, MAX_EVALUATIONS};

/// A closed interval `[a, b]` with finite `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawInterval")]
pub struct Interval {
    a: f64,
    b: f64,
}

#[derive(Deserialize)]
struct RawInterval {
    a: f64,
    b: f64,
}

impl TryFrom<RawInterval> for Interval {
    type Error = Error;
    fn try_from(raw: RawInterval) -> Result<Self> {
        Interval::new(raw.a, raw.b)
    }
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if a.is_finite() && b.is_finite() && a < b {
            Ok(Self { a, b })
        } else {
            Err(Error::InvalidInterval { a, b })
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    pub fn midpoint(&self) -> f64 {
        (self.a + self.b) / 2.0
    }

    pub fn contains(&self, x: f64) -> bool {
        self.a <= x && x <= self.b
    }

    /// The `i`-th of `n` equally spaced points; the last one is exactly `b`.
    pub fn grid_point(&self, i: usize, n: usize) -> f64 {
        debug_assert!(n >= 2 && i < n);
        if i + 1 == n {
            self.b
        } else {
            self.a + self.width() * (i as f64) / ((n - 1) as f64)
        }
    }

    /// Map `t` in `[0, 1]` onto the interval.
    pub fn lerp(&self, t: f64) -> f64 {
        (self.a + self.width() * t).clamp(self.a, self.b)
    }
}

/// Evaluate `g` on `n` equally spaced points of `iv`, endpoints included.
pub fn grid_scan<F>(mut g: F, iv: Interval, n: usize) -> Result<Vec<(f64, f64)>>
where
    F: FnMut(f64) -> Result<f64>,
{
    if n < 2 {
        return Err(Error::Parameter(format!("grid needs at least 2 points (got {n})")));
    }
    (0..n)
        .map(|i| {
            let x = iv.grid_point(i, n);
            g(x).map(|y| (x, y))
        })
        .collect()
}
