//! Expression language for univariate functions `f(x)`: parsing, evaluation
//! and forward-mode differentiation with dual numbers.

mod ast;
mod dual;
mod eval;
mod function;
mod parser;

pub use ast::{BinaryOp, Expression, Node, UnaryOp};
pub use dual::{DualValue, Scalar};
pub use eval::{derivative_value, evaluate, evaluate_dual, DomainError, DomainErrorKind};
pub use function::RealFunction;
pub use parser::{parse, ParseError};
