//! Right-hand sides of every inequality.
//!
//! The `*_from` functions are pure arithmetic on derivative magnitudes, so
//! the midpoint reductions can be checked without any quadrature. The public
//! wrappers obtain `|f'|` at the needed points from the function itself.

use super::params::{check_p, check_q, ExponentParams, TheoremId};
use crate::error::{Error, Result};
use crate::exprlang::RealFunction;
use crate::numerics::Interval;

/// `|f'|` at the points a bound may need.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeMagnitudes {
    pub at_a: f64,
    pub at_b: f64,
    /// At the midpoint `(a+b)/2`.
    pub at_mid: f64,
}

fn abs_derivative<F: RealFunction + ?Sized>(f: &F, t: f64) -> Result<f64> {
    Ok(f.derivative(t).map_err(Error::from)?.abs())
}

impl DerivativeMagnitudes {
    pub fn of<F: RealFunction + ?Sized>(f: &F, iv: Interval) -> Result<Self> {
        Ok(Self {
            at_a: abs_derivative(f, iv.a())?,
            at_b: abs_derivative(f, iv.b())?,
            at_mid: abs_derivative(f, iv.midpoint())?,
        })
    }

    /// Multiply every magnitude by `c >= 0`.
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            at_a: self.at_a * c,
            at_b: self.at_b * c,
            at_mid: self.at_mid * c,
        }
    }
}

/// `(max{u^r, v^r})^(1/r)`, evaluated literally.
fn power_max(u: f64, v: f64, r: f64) -> f64 {
    u.powf(r).max(v.powf(r)).powf(1.0 / r)
}

/// `weight · factor`, with an exact zero when the weight vanishes.
fn term(weight: f64, factor: f64) -> f64 {
    if weight == 0.0 {
        0.0
    } else {
        weight * factor
    }
}

fn check_x(iv: Interval, x: f64) -> Result<()> {
    if iv.contains(x) {
        Ok(())
    } else {
        Err(Error::Parameter(format!(
            "x = {x} lies outside [{}, {}]",
            iv.a(),
            iv.b()
        )))
    }
}

fn left_weight(iv: Interval, x: f64) -> f64 {
    (x - iv.a()) * (x - iv.a()) / iv.width()
}

fn right_weight(iv: Interval, x: f64) -> f64 {
    (iv.b() - x) * (iv.b() - x) / iv.width()
}

pub fn thm6_from(iv: Interval, x: f64, d: &DerivativeMagnitudes, at_x: f64) -> f64 {
    term(left_weight(iv, x) / 2.0, at_x.max(d.at_a))
        + term(right_weight(iv, x) / 2.0, at_x.max(d.at_b))
}

pub fn thm7_from(iv: Interval, x: f64, d: &DerivativeMagnitudes, at_x: f64, p: f64) -> f64 {
    let r = p / (p - 1.0);
    let c = (1.0 / (p + 1.0)).powf(1.0 / p);
    term(left_weight(iv, x) * c, power_max(at_x, d.at_a, r))
        + term(right_weight(iv, x) * c, power_max(at_x, d.at_b, r))
}

pub fn thm8_from(iv: Interval, x: f64, d: &DerivativeMagnitudes, at_x: f64, q: f64) -> f64 {
    term(left_weight(iv, x) / 2.0, power_max(at_x, d.at_a, q))
        + term(right_weight(iv, x) / 2.0, power_max(at_x, d.at_b, q))
}

pub fn baseline_from(
    iv: Interval,
    id: TheoremId,
    d: &DerivativeMagnitudes,
    params: &ExponentParams,
) -> Result<f64> {
    let w = iv.width();
    let p = params.p();
    let q = params.q();
    let r = params.holder_conjugate();
    let m = d.at_mid;
    Ok(match id {
        TheoremId::Ion1 => w / 4.0 * d.at_a.max(d.at_b),
        TheoremId::Ion2 => w / (2.0 * (p + 1.0).powf(1.0 / p)) * power_max(d.at_a, d.at_b, r),
        TheoremId::Eq1 => w / 8.0 * (m.max(d.at_a) + m.max(d.at_b)),
        TheoremId::Eq2 => {
            w / 4.0
                * (1.0 / (p + 1.0)).powf(1.0 / p)
                * (power_max(m, d.at_a, r) + power_max(m, d.at_b, r))
        }
        TheoremId::Eq3 => w / 8.0 * (power_max(m, d.at_a, q) + power_max(m, d.at_b, q)),
        other => {
            return Err(Error::Parameter(format!(
                "`{other}` is not a baseline; it depends on x"
            )))
        }
    })
}

/// Right-hand side of the `|f'|` bound at the free point `x`.
pub fn bound_thm6<F: RealFunction + ?Sized>(f: &F, iv: Interval, x: f64) -> Result<f64> {
    check_x(iv, x)?;
    let d = DerivativeMagnitudes::of(f, iv)?;
    Ok(thm6_from(iv, x, &d, abs_derivative(f, x)?))
}

/// Right-hand side of the Hölder bound at `x`; `|f'|^(p/(p-1))` must be
/// quasi-convex for it to apply.
pub fn bound_thm7<F: RealFunction + ?Sized>(f: &F, iv: Interval, x: f64, p: f64) -> Result<f64> {
    check_p(p)?;
    check_x(iv, x)?;
    let d = DerivativeMagnitudes::of(f, iv)?;
    Ok(thm7_from(iv, x, &d, abs_derivative(f, x)?, p))
}

/// Right-hand side of the power-mean bound at `x`.
pub fn bound_thm8<F: RealFunction + ?Sized>(f: &F, iv: Interval, x: f64, q: f64) -> Result<f64> {
    check_q(q)?;
    check_x(iv, x)?;
    let d = DerivativeMagnitudes::of(f, iv)?;
    Ok(thm8_from(iv, x, &d, abs_derivative(f, x)?, q))
}

pub fn bound_baseline<F: RealFunction + ?Sized>(
    f: &F,
    iv: Interval,
    id: TheoremId,
    params: &ExponentParams,
) -> Result<f64> {
    let d = DerivativeMagnitudes::of(f, iv)?;
    baseline_from(iv, id, &d, params)
}

pub(crate) fn weighted_from(
    iv: Interval,
    x: f64,
    id: TheoremId,
    d: &DerivativeMagnitudes,
    at_x: f64,
    params: &ExponentParams,
) -> Result<f64> {
    match id {
        TheoremId::Thm6 => Ok(thm6_from(iv, x, d, at_x)),
        TheoremId::Thm7 => Ok(thm7_from(iv, x, d, at_x, params.p())),
        TheoremId::Thm8 => Ok(thm8_from(iv, x, d, at_x, params.q())),
        other => baseline_from(iv, other, d, params),
    }
}

pub(crate) fn abs_derivative_at<F: RealFunction + ?Sized>(f: &F, t: f64) -> Result<f64> {
    abs_derivative(f, t)
}

pub(crate) fn ensure_in_interval(iv: Interval, x: f64) -> Result<()> {
    check_x(iv, x)
}
