use serde::{Deserialize, Serialize};

use super::bounds::ensure_in_interval;
use crate::error::{Error, Result};
use crate::exprlang::RealFunction;
use crate::numerics::{integrate_adaptive, Interval, QuadratureResult};

/// `∫_a^b f(u) du` by adaptive quadrature.
pub fn integral<F: RealFunction + ?Sized>(f: &F, iv: Interval, tol: f64) -> Result<QuadratureResult> {
    integrate_adaptive(|u| f.value(u).map_err(Error::from), iv, tol)
}

/// `((b-x)f(b) + (x-a)f(a))/(b-a) - mean`, before taking the absolute value.
pub fn signed_weighted_deviation<F: RealFunction + ?Sized>(
    f: &F,
    iv: Interval,
    x: f64,
    mean: f64,
) -> Result<f64> {
    let fa = f.value(iv.a())?;
    let fb = f.value(iv.b())?;
    Ok(((iv.b() - x) * fb + (x - iv.a()) * fa) / iv.width() - mean)
}

/// `|((b-x)f(b) + (x-a)f(a))/(b-a) - (1/(b-a))∫_a^b f|`.
pub fn lhs_weighted<F: RealFunction + ?Sized>(f: &F, iv: Interval, x: f64, tol: f64) -> Result<f64> {
    ensure_in_interval(iv, x)?;
    let q = integral(f, iv, tol)?;
    Ok(signed_weighted_deviation(f, iv, x, q.value / iv.width())?.abs())
}

/// Both sides of the integral identity at one `x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Lemma1Terms {
    /// Signed endpoint-weighted deviation.
    pub lhs: f64,
    /// `((x-a)²/(b-a))∫₀¹(t-1)f'(tx+(1-t)a)dt + ((b-x)²/(b-a))∫₀¹(1-t)f'(tx+(1-t)b)dt`
    pub rhs: f64,
    pub residual: f64,
    /// Combined quadrature error bound on `lhs - rhs`.
    pub quadrature_error: f64,
}

fn unit() -> Interval {
    Interval::new(0.0, 1.0).expect("unit interval")
}

/// Evaluate the identity with the printed signs: `(t-1)` on the `a` side and
/// `(1-t)` on the `b` side.
pub fn lemma1_terms<F: RealFunction + ?Sized>(
    f: &F,
    iv: Interval,
    x: f64,
    tol: f64,
) -> Result<Lemma1Terms> {
    ensure_in_interval(iv, x)?;
    let (a, b, w) = (iv.a(), iv.b(), iv.width());
    let mean = integral(f, iv, tol)?;
    let lhs = signed_weighted_deviation(f, iv, x, mean.value / w)?;
    let mut error = mean.error_estimate / w;

    let mut rhs = 0.0;
    let left = (x - a) * (x - a) / w;
    if left != 0.0 {
        let q = integrate_adaptive(
            |t| Ok((t - 1.0) * f.derivative(t * x + (1.0 - t) * a)?),
            unit(),
            tol,
        )?;
        rhs += left * q.value;
        error += left * q.error_estimate;
    }
    let right = (b - x) * (b - x) / w;
    if right != 0.0 {
        let q = integrate_adaptive(
            |t| Ok((1.0 - t) * f.derivative(t * x + (1.0 - t) * b)?),
            unit(),
            tol,
        )?;
        rhs += right * q.value;
        error += right * q.error_estimate;
    }
    Ok(Lemma1Terms {
        lhs,
        rhs,
        residual: (lhs - rhs).abs(),
        quadrature_error: error,
    })
}

/// `|LHS - RHS|` of the integral identity.
pub fn lemma1_residual<F: RealFunction + ?Sized>(f: &F, iv: Interval, x: f64, tol: f64) -> Result<f64> {
    lemma1_terms(f, iv, x, tol).map(|t| t.residual)
}
