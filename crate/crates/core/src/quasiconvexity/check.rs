use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::Interval;

/// Default acceptance tolerance for the sampled definition.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Default number of low-discrepancy triples.
pub const DEFAULT_SAMPLES: usize = 2048;

/// Grid points used for the exhaustive midpoint pairs.
const MAX_PAIR_GRID: usize = 65;

/// A point `(x, y, λ)` of the quasi-convexity definition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Triple {
    pub x: f64,
    pub y: f64,
    pub lambda: f64,
}

impl Triple {
    /// `λx + (1-λ)y`, clamped into the segment between `x` and `y`.
    pub fn combination(&self) -> f64 {
        let z = self.lambda * self.x + (1.0 - self.lambda) * self.y;
        z.clamp(self.x.min(self.y), self.x.max(self.y))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuasiConvexityVerdict {
    pub holds: bool,
    pub counterexample: Option<Triple>,
    /// Worst normalized excess `(g(z) - max{g(x), g(y)}) / (1 + max{|g(x)|, |g(y)|})`
    /// over every tested triple.
    pub margin: f64,
    pub tolerance: f64,
    /// Triples evaluated (low-discrepancy plus grid midpoints).
    pub triples: usize,
}

/// Normalized violation of the definition at one triple. Positive means
/// `g(λx+(1-λ)y)` exceeds `max{g(x), g(y)}`.
pub fn violation<G>(mut g: G, t: Triple) -> Result<f64>
where
    G: FnMut(f64) -> Result<f64>,
{
    let gx = g(t.x)?;
    let gy = g(t.y)?;
    let gz = g(t.combination())?;
    normalized(t, gx, gy, gz)
}

fn normalized(t: Triple, gx: f64, gy: f64, gz: f64) -> Result<f64> {
    if gx.is_nan() || gy.is_nan() || gz.is_nan() {
        return Err(Error::Parameter(format!(
            "function is NaN on the triple ({}, {}, {})",
            t.x, t.y, t.lambda
        )));
    }
    let hi = gx.max(gy);
    let scale = 1.0 + gx.abs().max(gy.abs());
    let excess = gz - hi;
    if excess <= 0.0 || gz == hi {
        let r = excess / scale;
        return Ok(if r.is_nan() { 0.0 } else { r.min(0.0) });
    }
    Ok(excess / scale)
}

/// Points of the additive-recurrence sequence in `[0,1)^3` built on the
/// plastic-number generalization of the golden ratio.
pub(crate) fn low_discrepancy_3d(i: usize) -> [f64; 3] {
    const G: f64 = 1.220_744_084_605_759_5;
    const A: [f64; 3] = [1.0 / G, 1.0 / (G * G), 1.0 / (G * G * G)];
    let n = i as f64;
    A.map(|a| (0.5 + a * n).fract())
}

/// Sample the quasi-convexity definition for `g` on `iv`.
///
/// Tests `samples` low-discrepancy triples plus the midpoint of every pair of
/// a uniform grid. `holds = false` comes with the worst triple, which
/// re-evaluates to a violation above `tol`; `holds = true` is evidence only.
pub fn check_quasiconvex<G>(
    mut g: G,
    iv: Interval,
    samples: usize,
    tol: f64,
) -> Result<QuasiConvexityVerdict>
where
    G: FnMut(f64) -> Result<f64>,
{
    if samples < 8 {
        return Err(Error::Parameter(format!("need at least 8 samples (got {samples})")));
    }
    if !(tol >= 0.0) {
        return Err(Error::Parameter(format!("tolerance must be >= 0 (got {tol})")));
    }

    let mut worst: Option<(f64, Triple)> = None;
    let mut triples = 0usize;
    let mut record = |t: Triple, v: f64| {
        triples += 1;
        if worst.is_none_or(|(w, _)| v > w) {
            worst = Some((v, t));
        }
    };

    let n = samples.min(MAX_PAIR_GRID - 1) + 1;
    let grid: Vec<f64> = (0..n).map(|i| iv.grid_point(i, n)).collect();
    let values = grid.iter().map(|&x| g(x)).collect::<Result<Vec<_>>>()?;
    for i in 0..n {
        for j in (i + 1)..n {
            let t = Triple {
                x: grid[i],
                y: grid[j],
                lambda: 0.5,
            };
            let gz = g(t.combination())?;
            record(t, normalized(t, values[i], values[j], gz)?);
        }
    }

    for i in 1..=samples {
        let [u, v, lambda] = low_discrepancy_3d(i);
        let t = Triple {
            x: iv.lerp(u),
            y: iv.lerp(v),
            lambda,
        };
        let gx = g(t.x)?;
        let gy = g(t.y)?;
        let gz = g(t.combination())?;
        record(t, normalized(t, gx, gy, gz)?);
    }

    let (margin, worst_triple) = worst.expect("at least one triple");
    let holds = margin <= tol;
    Ok(QuasiConvexityVerdict {
        holds,
        counterexample: (!holds).then_some(worst_triple),
        margin,
        tolerance: tol,
        triples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym() -> Interval {
        Interval::new(-1.0, 1.0).unwrap()
    }

    #[test]
    fn convex_square_holds() {
        let v = check_quasiconvex(|x| Ok(x * x), sym(), 256, DEFAULT_TOLERANCE).unwrap();
        assert!(v.holds);
        assert!(v.counterexample.is_none());
        assert!(v.margin <= DEFAULT_TOLERANCE);
    }

    #[test]
    fn concave_foil_rejected_with_endpoint_triple() {
        let v = check_quasiconvex(|x| Ok(-x * x), sym(), 256, DEFAULT_TOLERANCE).unwrap();
        assert!(!v.holds);
        let t = v.counterexample.unwrap();
        assert_eq!(t, Triple { x: -1.0, y: 1.0, lambda: 0.5 });
        assert!(violation(|x| Ok(-x * x), t).unwrap() > DEFAULT_TOLERANCE);
    }

    #[test]
    fn sqrt_abs_is_quasiconvex() {
        let g = |x: f64| Ok(x.abs().sqrt());
        let v = check_quasiconvex(g, sym(), 1024, DEFAULT_TOLERANCE).unwrap();
        assert!(v.holds, "{v:?}");
    }

    #[test]
    fn sequence_is_in_unit_cube_and_spread() {
        let pts: Vec<_> = (1..=1000).map(low_discrepancy_3d).collect();
        for p in &pts {
            assert!(p.iter().all(|c| (0.0..1.0).contains(c)));
        }
        // Every octant receives roughly an eighth of the points.
        let mut octants = [0usize; 8];
        for p in &pts {
            let k = (p[0] >= 0.5) as usize | ((p[1] >= 0.5) as usize) << 1 | ((p[2] >= 0.5) as usize) << 2;
            octants[k] += 1;
        }
        assert!(octants.iter().all(|&c| (110..=140).contains(&c)), "{octants:?}");
    }

    #[test]
    fn preconditions() {
        assert!(check_quasiconvex(Ok, sym(), 7, 0.0).is_err());
        assert!(check_quasiconvex(Ok, sym(), 8, -1.0).is_err());
        assert!(check_quasiconvex(|_| Ok(f64::NAN), sym(), 8, 0.0).is_err());
    }
}
