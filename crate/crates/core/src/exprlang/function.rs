use super::ast::Expression;
use super::eval::{derivative_value, evaluate, DomainError};

/// A real function of one variable together with its derivative.
pub trait RealFunction: Sync {
    fn value(&self, x: f64) -> Result<f64, DomainError>;
    fn derivative(&self, x: f64) -> Result<f64, DomainError>;
    /// Identifier used in reports (canonical text, catalog id, generator id).
    fn label(&self) -> String;
}

impl RealFunction for Expression {
    fn value(&self, x: f64) -> Result<f64, DomainError> {
        evaluate(self, x)
    }

    fn derivative(&self, x: f64) -> Result<f64, DomainError> {
        derivative_value(self, x)
    }

    fn label(&self) -> String {
        self.canonical()
    }
}

impl<T: RealFunction + ?Sized> RealFunction for &T {
    fn value(&self, x: f64) -> Result<f64, DomainError> {
        (**self).value(x)
    }

    fn derivative(&self, x: f64) -> Result<f64, DomainError> {
        (**self).derivative(x)
    }

    fn label(&self) -> String {
        (**self).label()
    }
}

impl<T: RealFunction + ?Sized + Send> RealFunction for Box<T> {
    fn value(&self, x: f64) -> Result<f64, DomainError> {
        (**self).value(x)
    }

    fn derivative(&self, x: f64) -> Result<f64, DomainError> {
        (**self).derivative(x)
    }

    fn label(&self) -> String {
        (**self).label()
    }
}
