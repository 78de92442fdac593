use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{grid_scan, Interval};

/// Monotonicity pattern of a function sampled on a uniform grid. A
/// continuous function is quasi-convex exactly when it is monotone or
/// valley-shaped, so this is an independent certifier.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum ShapeClass {
    Nondecreasing,
    Nonincreasing,
    /// Nonincreasing up to `pivot`, nondecreasing after it.
    Valley { pivot: f64, pivot_index: usize },
    Other,
}

impl ShapeClass {
    pub fn is_quasiconvex_pattern(&self) -> bool {
        !matches!(self, ShapeClass::Other)
    }
}

pub fn classify_shape<G>(g: G, iv: Interval, gridsize: usize, tol: f64) -> Result<ShapeClass>
where
    G: FnMut(f64) -> Result<f64>,
{
    if gridsize < 16 {
        return Err(Error::Parameter(format!("grid size must be >= 16 (got {gridsize})")));
    }
    let pts = grid_scan(g, iv, gridsize)?;
    if pts.iter().any(|(_, y)| y.is_nan()) {
        return Err(Error::Parameter("function is NaN on the classification grid".into()));
    }
    let diffs: Vec<f64> = pts.windows(2).map(|w| w[1].1 - w[0].1).collect();

    if diffs.iter().all(|&d| d >= -tol) {
        return Ok(ShapeClass::Nondecreasing);
    }
    if diffs.iter().all(|&d| d <= tol) {
        return Ok(ShapeClass::Nonincreasing);
    }
    // Strict signs only; steps within tolerance are neutral.
    let last_down = diffs.iter().rposition(|&d| d < -tol);
    let first_up = diffs.iter().position(|&d| d > tol);
    match (last_down, first_up) {
        (Some(down), Some(up)) if down < up => {
            // The minimum sits between the last descent and the first ascent.
            let pivot_index = (down + 1..=up)
                .min_by(|&i, &j| pts[i].1.total_cmp(&pts[j].1).then(i.cmp(&j)))
                .unwrap_or(down + 1);
            Ok(ShapeClass::Valley {
                pivot: pts[pivot_index].0,
                pivot_index,
            })
        }
        _ => Ok(ShapeClass::Other),
    }
}
