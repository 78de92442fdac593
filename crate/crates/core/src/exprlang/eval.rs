use std::fmt;

use thiserror::Error;

use super::ast::{BinaryOp, Expression, Node, UnaryOp};
use super::dual::{DualValue, Scalar};

/// Exponents within this distance of an integer are treated as integers.
const INTEGER_EXPONENT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainErrorKind {
    LogNonPositive,
    SqrtNegative,
    DivisionByZero,
    ZeroToNegativePower,
    NegativeBaseFractionalPower,
    DerivativeUndefined,
}

impl fmt::Display for DomainErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DomainErrorKind::LogNonPositive => "log of a non-positive value",
            DomainErrorKind::SqrtNegative => "sqrt of a negative value",
            DomainErrorKind::DivisionByZero => "division by zero",
            DomainErrorKind::ZeroToNegativePower => "zero raised to a negative power",
            DomainErrorKind::NegativeBaseFractionalPower => {
                "negative base raised to a non-integer power"
            }
            DomainErrorKind::DerivativeUndefined => "derivative undefined",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("domain error at x = {x}: {kind} in `{node}`")]
pub struct DomainError {
    pub kind: DomainErrorKind,
    /// Canonical text of the offending sub-expression.
    pub node: String,
    pub x: f64,
}

impl DomainError {
    pub fn new(kind: DomainErrorKind, node: impl Into<String>, x: f64) -> Self {
        Self {
            kind,
            node: node.into(),
            x,
        }
    }
}

fn integer_exponent(e: f64) -> Option<i32> {
    let r = e.round();
    if (e - r).abs() <= INTEGER_EXPONENT_TOL && r.abs() <= f64::from(i32::MAX) {
        Some(r as i32)
    } else {
        None
    }
}

fn walk<S: Scalar>(node: &Node, x: S) -> Result<S, DomainError> {
    let fail = |kind| DomainError::new(kind, node.to_string(), x.re());
    match node {
        Node::Constant(c) => Ok(S::lift(*c)),
        Node::Variable => Ok(x),
        Node::Unary(op, child) => {
            let u = walk(child, x)?;
            Ok(match op {
                UnaryOp::Neg => -u,
                UnaryOp::Abs => u.abs(),
                UnaryOp::Sqrt => {
                    if u.re() < 0.0 {
                        return Err(fail(DomainErrorKind::SqrtNegative));
                    }
                    u.sqrt()
                }
                UnaryOp::Exp => u.exp(),
                UnaryOp::Log => {
                    if u.re() <= 0.0 {
                        return Err(fail(DomainErrorKind::LogNonPositive));
                    }
                    u.ln()
                }
                UnaryOp::Sin => u.sin(),
                UnaryOp::Cos => u.cos(),
            })
        }
        Node::Binary(op, l, r) => {
            let u = walk(l, x)?;
            let v = walk(r, x)?;
            Ok(match op {
                BinaryOp::Add => u + v,
                BinaryOp::Sub => u - v,
                BinaryOp::Mul => u * v,
                BinaryOp::Div => {
                    if v.re() == 0.0 {
                        return Err(fail(DomainErrorKind::DivisionByZero));
                    }
                    u / v
                }
                BinaryOp::Pow => pow(u, v).map_err(fail)?,
            })
        }
    }
}

fn pow<S: Scalar>(base: S, exponent: S) -> Result<S, DomainErrorKind> {
    let e = exponent.re();
    let b = base.re();
    let value = match integer_exponent(e) {
        Some(n) => {
            if n < 0 && b == 0.0 {
                return Err(DomainErrorKind::ZeroToNegativePower);
            }
            base.powi(n)
        }
        None => {
            if b < 0.0 {
                return Err(DomainErrorKind::NegativeBaseFractionalPower);
            }
            if b == 0.0 && e < 0.0 {
                return Err(DomainErrorKind::ZeroToNegativePower);
            }
            base.powf(e)
        }
    };
    if exponent.is_constant() {
        return Ok(value);
    }
    // d(u^v) picks up u^v · ln(u) · v' when the exponent varies.
    if b <= 0.0 {
        return Err(DomainErrorKind::DerivativeUndefined);
    }
    let varying = exponent - S::lift(e);
    Ok(value + value * base.ln() * varying)
}

/// Value of the expression at `x`.
pub fn evaluate(expr: &Expression, x: f64) -> Result<f64, DomainError> {
    walk(expr.root(), x)
}

/// Value and derivative at `x` by forward-mode propagation.
pub fn evaluate_dual(expr: &Expression, x: f64) -> Result<DualValue, DomainError> {
    let d = walk(expr.root(), DualValue::variable(x))?;
    if d.deriv.is_nan() && !d.value.is_nan() {
        return Err(DomainError::new(
            DomainErrorKind::DerivativeUndefined,
            expr.canonical(),
            x,
        ));
    }
    Ok(d)
}

/// `f'(x)` by dual-number propagation.
pub fn derivative_value(expr: &Expression, x: f64) -> Result<f64, DomainError> {
    evaluate_dual(expr, x).map(|d| d.deriv)
}
