use thiserror::Error;

use crate::exprlang::{DomainError, ParseError};
use crate::hhbounds::Reproduction;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error(transparent)]
    Domain(#[from] DomainError),

    #[error("require a < b with both endpoints finite (got a = {a}, b = {b})")]
    InvalidInterval { a: f64, b: f64 },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error(
        "quadrature did not converge after {evaluations} evaluations \
         (estimate {estimate:e}, deepest interval [{deepest_a}, {deepest_b}])"
    )]
    QuadratureNoConvergence {
        evaluations: usize,
        estimate: f64,
        deepest_a: f64,
        deepest_b: f64,
    },

    #[error("generator: {0}")]
    Generator(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),

    #[error(
        "bound violation: {} at x = {} on [{}, {}] for {} (lhs {}, rhs {}, slack {})",
        .0.theorem, .0.x, .0.interval.a(), .0.interval.b(), .0.function, .0.lhs, .0.rhs, .0.slack
    )]
    BoundViolation(Box<Reproduction>),
}
