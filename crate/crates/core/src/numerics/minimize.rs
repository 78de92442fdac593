use serde::{Deserialize, Serialize};

use super::Interval;
use crate::error::{Error, Result};

/// Size of the bracketing grid that precedes golden-section refinement.
pub const COARSE_GRID_POINTS: usize = 1025;

/// Local minima of the coarse grid that get refined.
const REFINED_CANDIDATES: usize = 4;

const MAX_GOLDEN_ITERATIONS: usize = 200;

const INV_PHI: f64 = 0.618_033_988_749_894_8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MinimizationResult {
    pub argmin: f64,
    pub min_value: f64,
    /// Golden-section iterations across all refined brackets.
    pub iterations: usize,
}

/// Best point so far; ties go to the smaller `x`.
#[derive(Debug, Clone, Copy)]
struct Best {
    x: f64,
    v: f64,
}

impl Best {
    fn offer(&mut self, x: f64, v: f64) {
        if v < self.v || (v == self.v && x < self.x) {
            self.x = x;
            self.v = v;
        }
    }
}

fn finite(x: f64, v: f64) -> Result<f64> {
    if v.is_nan() {
        Err(Error::Parameter(format!("objective is NaN at x = {x}")))
    } else {
        Ok(v)
    }
}

/// Minimize `g` on `iv`: scan a 1025-point grid, then refine the lowest
/// local minima of the grid by golden-section search down to bracket width
/// `tol`.
pub fn minimize_scalar<F>(mut g: F, iv: Interval, tol: f64) -> Result<MinimizationResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(tol > 0.0) {
        return Err(Error::Parameter(format!("minimization tolerance must be > 0 (got {tol})")));
    }
    let n = COARSE_GRID_POINTS;
    let xs: Vec<f64> = (0..n).map(|i| iv.grid_point(i, n)).collect();
    let mut vs = Vec::with_capacity(n);
    for &x in &xs {
        vs.push(finite(x, g(x)?)?);
    }

    let mut best = Best { x: xs[0], v: vs[0] };
    for (&x, &v) in xs.iter().zip(&vs) {
        best.offer(x, v);
    }

    let mut minima: Vec<usize> = (0..n)
        .filter(|&i| (i == 0 || vs[i] <= vs[i - 1]) && (i + 1 == n || vs[i] <= vs[i + 1]))
        .collect();
    minima.sort_by(|&i, &j| vs[i].total_cmp(&vs[j]).then(i.cmp(&j)));
    minima.truncate(REFINED_CANDIDATES);

    let mut iterations = 0;
    for i in minima {
        let mut lo = xs[i.saturating_sub(1)];
        let mut hi = xs[(i + 1).min(n - 1)];
        let mut x1 = hi - INV_PHI * (hi - lo);
        let mut x2 = lo + INV_PHI * (hi - lo);
        let mut v1 = finite(x1, g(x1)?)?;
        let mut v2 = finite(x2, g(x2)?)?;
        best.offer(x1, v1);
        best.offer(x2, v2);
        let mut k = 0;
        while hi - lo > tol && k < MAX_GOLDEN_ITERATIONS {
            if v1 <= v2 {
                hi = x2;
                x2 = x1;
                v2 = v1;
                x1 = hi - INV_PHI * (hi - lo);
                v1 = finite(x1, g(x1)?)?;
                best.offer(x1, v1);
            } else {
                lo = x1;
                x1 = x2;
                v1 = v2;
                x2 = lo + INV_PHI * (hi - lo);
                v2 = finite(x2, g(x2)?)?;
                best.offer(x2, v2);
            }
            k += 1;
        }
        let xm = 0.5 * (lo + hi);
        best.offer(xm, finite(xm, g(xm)?)?);
        iterations += k;
    }

    Ok(MinimizationResult {
        argmin: best.x,
        min_value: best.v,
        iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    fn unit() -> Interval {
        Interval::new(0.0, 1.0).unwrap()
    }

    #[test]
    fn symmetric_quadratic() {
        let r = minimize_scalar(|x| Ok((x * x + (1.0 - x) * (1.0 - x)) / 2.0), unit(), 1e-10)
            .unwrap();
        assert!((r.argmin - 0.5).abs() <= 1e-8);
        assert!((r.min_value - 0.25).abs() <= 1e-8);
    }

    #[test]
    fn monotone_hits_left_endpoint() {
        let r = minimize_scalar(Ok, unit(), 1e-10).unwrap();
        assert_eq!(r.argmin, 0.0);
        assert_eq!(r.min_value, 0.0);
    }

    #[test]
    fn constant_ties_go_to_smaller_x() {
        let iv = Interval::new(-2.0, 3.0).unwrap();
        let r = minimize_scalar(|_| Ok(7.0), iv, 1e-10).unwrap();
        assert_eq!(r.argmin, -2.0);
        assert_eq!(r.min_value, 7.0);
    }

    #[test]
    fn exp_weighted_quadratic_matches_dense_grid() {
        let g = |x: f64| x * x * x.exp() / 2.0 + E * (1.0 - x) * (1.0 - x) / 2.0;
        // Oracle: one million uniform samples.
        let m = 1_000_000;
        let (mut gx, mut gv) = (0.0, f64::INFINITY);
        for i in 0..=m {
            let x = i as f64 / m as f64;
            let v = g(x);
            if v < gv {
                gx = x;
                gv = v;
            }
        }
        assert!((gx - 0.551).abs() <= 0.01);
        let r = minimize_scalar(|x| Ok(g(x)), unit(), 1e-10).unwrap();
        assert!((r.argmin - 0.551).abs() <= 0.01);
        assert!((r.argmin - gx).abs() <= 1e-5);
        assert!(r.min_value <= gv + 1e-12);
    }

    #[test]
    fn picks_the_deeper_basin() {
        // Two basins; the right one is deeper by a hair.
        let g = |x: f64| ((x - 0.2) * (x - 0.2)).min((x - 0.8) * (x - 0.8) - 1e-6);
        let r = minimize_scalar(|x| Ok(g(x)), unit(), 1e-12).unwrap();
        assert!((r.argmin - 0.8).abs() < 1e-6);
    }

    #[test]
    fn errors_propagate() {
        let r = minimize_scalar(|x| if x > 0.5 { Err(Error::Parameter("x".into())) } else { Ok(x) }, unit(), 1e-8);
        assert!(r.is_err());
        assert!(minimize_scalar(|_| Ok(f64::NAN), unit(), 1e-8).is_err());
    }
}
