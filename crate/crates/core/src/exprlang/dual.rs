use std::ops::{Add, Div, Mul, Neg, Sub};

/// A first-order dual number `value + deriv·ε` with `ε² = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualValue {
    pub value: f64,
    pub deriv: f64,
}

impl DualValue {
    pub const fn new(value: f64, deriv: f64) -> Self {
        Self { value, deriv }
    }

    pub const fn constant(value: f64) -> Self {
        Self { value, deriv: 0.0 }
    }

    /// The seed for differentiating with respect to `x`.
    pub const fn variable(x: f64) -> Self {
        Self { value: x, deriv: 1.0 }
    }

    /// Chain rule `outer'(u) · u'`. An exactly-zero inner derivative
    /// contributes zero even where `outer'` is infinite (e.g. `sqrt` at 0).
    #[inline]
    fn chain(self, value: f64, outer_deriv: f64) -> Self {
        let deriv = if self.deriv == 0.0 {
            0.0
        } else {
            outer_deriv * self.deriv
        };
        Self { value, deriv }
    }
}

impl Add for DualValue {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.value + rhs.value, self.deriv + rhs.deriv)
    }
}

impl Sub for DualValue {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.value - rhs.value, self.deriv - rhs.deriv)
    }
}

impl Mul for DualValue {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.value * rhs.value,
            self.value * rhs.deriv + self.deriv * rhs.value,
        )
    }
}

impl Div for DualValue {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let v = self.value / rhs.value;
        Self::new(v, (self.deriv - v * rhs.deriv) / rhs.value)
    }
}

impl Neg for DualValue {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.value, -self.deriv)
    }
}

/// Arithmetic shared by plain `f64` evaluation and dual-number
/// differentiation, so both go through one tree walker.
pub trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn lift(v: f64) -> Self;
    fn re(self) -> f64;
    /// True when the value carries no dependence on `x`.
    fn is_constant(self) -> bool;

    fn abs(self) -> Self;
    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn powi(self, n: i32) -> Self;
    fn powf(self, e: f64) -> Self;
}

impl Scalar for f64 {
    fn lift(v: f64) -> Self {
        v
    }
    fn re(self) -> f64 {
        self
    }
    fn is_constant(self) -> bool {
        true
    }
    fn abs(self) -> Self {
        f64::abs(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn powi(self, n: i32) -> Self {
        f64::powi(self, n)
    }
    fn powf(self, e: f64) -> Self {
        f64::powf(self, e)
    }
}

impl Scalar for DualValue {
    fn lift(v: f64) -> Self {
        Self::constant(v)
    }
    fn re(self) -> f64 {
        self.value
    }
    fn is_constant(self) -> bool {
        self.deriv == 0.0
    }
    /// `abs'(0) = 0`: the symmetric subgradient.
    fn abs(self) -> Self {
        let s = if self.value > 0.0 {
            1.0
        } else if self.value < 0.0 {
            -1.0
        } else {
            0.0
        };
        Self::new(self.value.abs(), s * self.deriv)
    }
    fn sqrt(self) -> Self {
        let r = self.value.sqrt();
        self.chain(r, 0.5 / r)
    }
    fn exp(self) -> Self {
        let e = self.value.exp();
        self.chain(e, e)
    }
    fn ln(self) -> Self {
        self.chain(self.value.ln(), 1.0 / self.value)
    }
    fn sin(self) -> Self {
        self.chain(self.value.sin(), self.value.cos())
    }
    fn cos(self) -> Self {
        self.chain(self.value.cos(), -self.value.sin())
    }
    fn powi(self, n: i32) -> Self {
        if n == 0 {
            return Self::constant(1.0);
        }
        self.chain(self.value.powi(n), f64::from(n) * self.value.powi(n - 1))
    }
    fn powf(self, e: f64) -> Self {
        self.chain(self.value.powf(e), e * self.value.powf(e - 1.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_rule() {
        let x = DualValue::variable(3.0);
        let y = x * x * x;
        assert_eq!(y, DualValue::new(27.0, 27.0));
    }

    #[test]
    fn quotient_rule() {
        let x = DualValue::variable(2.0);
        let y = DualValue::constant(1.0) / x;
        assert_eq!(y.value, 0.5);
        assert_eq!(y.deriv, -0.25);
    }

    #[test]
    fn abs_kink_convention() {
        assert_eq!(DualValue::variable(0.0).abs().deriv, 0.0);
        assert_eq!(DualValue::variable(-2.0).abs().deriv, -1.0);
    }

    #[test]
    fn chain_through_exp_and_sin() {
        let x = DualValue::variable(0.7);
        let y = (x * DualValue::constant(2.0)).exp().sin();
        let e = (1.4f64).exp();
        let expected = e.cos() * 2.0 * e;
        assert!((y.deriv - expected).abs() <= 1e-12 * expected.abs());
    }

    #[test]
    fn zero_inner_derivative_masks_infinite_outer() {
        let y = DualValue::variable(0.0).abs().sqrt();
        assert_eq!(y, DualValue::new(0.0, 0.0));
    }
}
