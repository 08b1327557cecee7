use std::sync::OnceLock;

use super::deriv::{d1, DiffError};
use super::{parse_expr, EvalError, Expr, ParseError};
use crate::interval::Interval;

/// A function of one variable with lazily built exact derivatives up to
/// order four.
///
/// The derivative cache is filled on first use and never mutated afterwards,
/// so a model can be shared across threads freely.
#[derive(Debug)]
pub struct FunctionModel {
    var: String,
    expr: Expr,
    derivatives: [OnceLock<Result<Expr, DiffError>>; 4],
    domain_hint: Option<Interval>,
}

impl Clone for FunctionModel {
    fn clone(&self) -> Self {
        FunctionModel::new(self.expr.clone(), &self.var).with_domain_hint_opt(self.domain_hint)
    }
}

impl FunctionModel {
    pub fn new(expr: Expr, var: &str) -> Self {
        FunctionModel {
            var: var.to_string(),
            expr,
            derivatives: Default::default(),
            domain_hint: None,
        }
    }

    pub fn parse(source: &str, var: &str) -> Result<Self, ParseError> {
        Ok(FunctionModel::new(parse_expr(source, var)?, var))
    }

    pub fn with_domain_hint(self, iv: Interval) -> Self {
        self.with_domain_hint_opt(Some(iv))
    }

    fn with_domain_hint_opt(mut self, iv: Option<Interval>) -> Self {
        self.domain_hint = iv;
        self
    }

    pub fn domain_hint(&self) -> Option<Interval> {
        self.domain_hint
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    /// Derivative of order `0..=4`; order 0 is the function itself.
    pub fn derivative(&self, order: u32) -> Result<&Expr, DiffError> {
        match order {
            0 => Ok(&self.expr),
            1..=4 => {
                let slot = &self.derivatives[order as usize - 1];
                slot.get_or_init(|| d1(self.derivative(order - 1)?))
                    .as_ref()
                    .map_err(|e| *e)
            }
            _ => Err(DiffError::InvalidOrder(order)),
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64, EvalError> {
        self.expr.eval(x)
    }

    pub fn eval_derivative(&self, order: u32, x: f64) -> Result<f64, ModelError> {
        Ok(self.derivative(order)?.eval(x)?)
    }

    pub fn to_source(&self) -> String {
        self.expr.display(&self.var).to_string()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum ModelError {
    #[error(transparent)]
    Diff(#[from] DiffError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::differentiate;

    #[test]
    fn cached_derivatives_match_direct_differentiation() {
        let f = FunctionModel::parse("x*exp(x) + sin(3*x)", "x").unwrap();
        for k in 1..=4 {
            assert_eq!(
                f.derivative(k).unwrap(),
                &differentiate(f.expr(), k).unwrap()
            );
        }
        assert!(f.derivative(5).is_err());
    }

    #[test]
    fn abs_error_is_cached_and_repeated() {
        let f = FunctionModel::parse("abs(x)", "x").unwrap();
        assert!(f.derivative(3).is_err());
        assert!(f.derivative(1).is_err());
        assert_eq!(f.eval(-2.0).unwrap(), 2.0);
    }

    #[test]
    fn shared_across_threads() {
        let f = FunctionModel::parse("x^6", "x").unwrap();
        std::thread::scope(|s| {
            for _ in 0..4 {
                s.spawn(|| assert_eq!(f.eval_derivative(4, 1.0).unwrap(), 360.0));
            }
        });
    }
}
