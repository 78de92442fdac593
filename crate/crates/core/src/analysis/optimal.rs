use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exprlang::RealFunction;
use crate::hhbounds::{abs_derivative_at, weighted_from, DerivativeMagnitudes, ExponentParams, TheoremId};
use crate::numerics::{minimize_scalar, Interval, MinimizationResult};

pub const EXPLORATORY_NOTE: &str = "exploratory: x chosen to minimize the bound; \
the midpoint is the reference choice";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimalX {
    pub function: String,
    pub interval: Interval,
    pub theorem: TheoremId,
    pub params: ExponentParams,
    pub result: MinimizationResult,
    /// The same bound at `x = (a+b)/2`.
    pub midpoint_value: f64,
    /// `midpoint_value - result.min_value`.
    pub improvement: f64,
    pub note: String,
}

/// Minimize one of the weighted bounds over `x ∈ [a, b]`.
pub fn optimal_x<F: RealFunction + ?Sized>(
    f: &F,
    iv: Interval,
    id: TheoremId,
    params: ExponentParams,
    tol: f64,
) -> Result<OptimalX> {
    if id.is_baseline() {
        return Err(Error::Parameter(format!(
            "`{id}` does not depend on x; choose thm6, thm7 or thm8"
        )));
    }
    let d = DerivativeMagnitudes::of(f, iv)?;
    let bound = |x: f64| weighted_from(iv, x, id, &d, abs_derivative_at(f, x)?, &params);
    let result = minimize_scalar(bound, iv, tol)?;
    let midpoint_value = bound(iv.midpoint())?;
    Ok(OptimalX {
        function: f.label(),
        interval: iv,
        theorem: id,
        params,
        result,
        midpoint_value,
        improvement: midpoint_value - result.min_value,
        note: EXPLORATORY_NOTE.to_string(),
    })
}
