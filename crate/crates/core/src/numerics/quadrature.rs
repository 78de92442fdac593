//! Globally adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! Each panel is integrated with the 15-point Kronrod rule; the embedded
//! 7-point Gauss rule supplies the error estimate `|K15 - G7|`. The panel with
//! the largest estimate is bisected until the summed estimate drops below the
//! tolerance. Refining the worst panel (rather than splitting the tolerance
//! recursively) lets jump discontinuities in `f'` converge.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use super::Interval;
use crate::error::{Error, Result};

/// Evaluation budget shared by all panels of one integral.
pub const MAX_EVALUATIONS: usize = 1_000_000;

/// Polynomials up to this degree are integrated exactly by the Gauss rule,
/// so the error estimate vanishes on them.
pub const EXACT_DEGREE: usize = 13;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    // Max-heap on error; ties broken by position for determinism.
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn gauss_kronrod<F>(f: &mut F, a: f64, b: f64) -> Result<Panel>
where
    F: FnMut(f64) -> Result<f64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let s = f(center - dx)? + f(center + dx)?;
        kronrod += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).abs();
    if !value.is_finite() || !error.is_finite() {
        return Err(Error::QuadratureNoConvergence {
            evaluations: 15,
            estimate: error,
            deepest_a: a,
            deepest_b: b,
        });
    }
    Ok(Panel { a, b, value, error })
}

/// Integrate `f` over `iv` to absolute tolerance `tol`.
///
/// On success `error_estimate <= tol`. Fails when the evaluation budget is
/// exhausted or a panel can no longer be bisected in floating point; the
/// error then carries the narrowest panel reached.
pub fn integrate_adaptive<F>(mut f: F, iv: Interval, tol: f64) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(tol > 0.0) {
        return Err(Error::Parameter(format!("quadrature tolerance must be > 0 (got {tol})")));
    }
    let first = gauss_kronrod(&mut f, iv.a(), iv.b())?;
    let mut evaluations = 15;
    let mut total_error = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    let mut narrowest = (iv.a(), iv.b());

    loop {
        if total_error <= tol {
            // Re-sum exactly; the running total is updated incrementally.
            total_error = heap.iter().map(|p| p.error).sum();
            if total_error <= tol {
                break;
            }
        }
        let worst = heap.pop().expect("heap never empties");
        let mid = 0.5 * (worst.a + worst.b);
        let splittable = mid > worst.a && mid < worst.b;
        if !splittable || evaluations + 30 > MAX_EVALUATIONS {
            if splittable {
                narrowest = (worst.a, worst.b);
            }
            return Err(Error::QuadratureNoConvergence {
                evaluations,
                estimate: total_error,
                deepest_a: narrowest.0,
                deepest_b: narrowest.1,
            });
        }
        let left = gauss_kronrod(&mut f, worst.a, mid)?;
        let right = gauss_kronrod(&mut f, mid, worst.b)?;
        evaluations += 30;
        if mid - worst.a < narrowest.1 - narrowest.0 {
            narrowest = (worst.a, mid);
        }
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    let mut panels = heap.into_vec();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value = panels.iter().map(|p| p.value).sum();
    Ok(QuadratureResult {
        value,
        error_estimate: total_error,
        evaluations,
    })
}
