//! The weight function `h` of h-convexity.

use std::fmt;

use thiserror::Error;

use crate::expr::{parse_expr, EvalError, Expr, ParseError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HSpecError {
    #[error("power weight exponent s = {0} must lie in (0, 1]")]
    InvalidPower(f64),
    #[error("weight h must be positive on (0, 1): h({t}) = {value}")]
    NotPositive { t: f64, value: f64 },
    #[error("weight h cannot be evaluated at t = {t}: {source}")]
    Eval {
        t: f64,
        #[source]
        source: EvalError,
    },
    #[error("the power weight needs an exponent s")]
    MissingPower,
    #[error("invalid weight expression: {0}")]
    Parse(#[from] ParseError),
}

/// Weight `h` on `(0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub enum HSpec {
    /// `t^s`, the s-convex (second sense) weight.
    Power(f64),
    /// `1`, the P-function weight.
    One,
    /// `1/t`, the Godunova–Levin weight.
    Reciprocal,
    /// `t`, ordinary convexity.
    Identity,
    /// Arbitrary expression in `t`.
    Custom(Expr),
}

const POSITIVITY_SAMPLES: usize = 1024;

impl HSpec {
    pub fn eval(&self, t: f64) -> Result<f64, EvalError> {
        match self {
            HSpec::Power(s) => Ok(t.powf(*s)),
            HSpec::One => Ok(1.0),
            HSpec::Reciprocal => {
                if t == 0.0 {
                    Err(EvalError::DivisionByZero)
                } else {
                    Ok(1.0 / t)
                }
            }
            HSpec::Identity => Ok(t),
            HSpec::Custom(e) => e.eval(t),
        }
    }

    /// Parameter range check plus positivity sampled on the open unit interval.
    pub fn validate(&self) -> Result<(), HSpecError> {
        if let HSpec::Power(s) = self {
            if !(*s > 0.0 && *s <= 1.0) {
                return Err(HSpecError::InvalidPower(*s));
            }
        }
        let n = POSITIVITY_SAMPLES;
        for i in 1..=n {
            let t = i as f64 / (n + 1) as f64;
            let value = self
                .eval(t)
                .map_err(|source| HSpecError::Eval { t, source })?;
            if value.is_nan() || value <= 0.0 {
                return Err(HSpecError::NotPositive { t, value });
            }
        }
        Ok(())
    }

    /// True when `h` is finite at both `t = 0` and `t = 1`.
    pub fn finite_at_endpoints(&self) -> bool {
        [0.0, 1.0]
            .iter()
            .all(|&t| self.eval(t).map(f64::is_finite).unwrap_or(false))
    }

    /// Builtin names (`t`, `identity`, `1`, `one`, `1/t`, `reciprocal`,
    /// `power` with `s`) or any expression in `t`.
    pub fn parse(source: &str, s: Option<f64>) -> Result<HSpec, HSpecError> {
        let compact: String = source.chars().filter(|c| !c.is_whitespace()).collect();
        let h = match compact.as_str() {
            "t" | "identity" => HSpec::Identity,
            "1" | "one" => HSpec::One,
            "1/t" | "reciprocal" => HSpec::Reciprocal,
            "power" | "t^s" => HSpec::Power(s.ok_or(HSpecError::MissingPower)?),
            _ => HSpec::Custom(parse_expr(source, "t")?),
        };
        Ok(h)
    }
}

impl fmt::Display for HSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HSpec::Power(s) => write!(f, "t^{s}"),
            HSpec::One => f.write_str("1"),
            HSpec::Reciprocal => f.write_str("1/t"),
            HSpec::Identity => f.write_str("t"),
            HSpec::Custom(e) => write!(f, "{}", e.display("t")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_values() {
        assert_eq!(HSpec::Power(0.5).eval(0.25).unwrap(), 0.5);
        assert_eq!(
            HSpec::Power(1.0).eval(0.3).unwrap(),
            HSpec::Identity.eval(0.3).unwrap()
        );
        assert_eq!(HSpec::One.eval(0.0).unwrap(), 1.0);
        assert_eq!(HSpec::Reciprocal.eval(0.0), Err(EvalError::DivisionByZero));
        assert_eq!(HSpec::Reciprocal.eval(0.5).unwrap(), 2.0);
    }

    #[test]
    fn parse_names_and_expressions() {
        assert_eq!(HSpec::parse("t", None).unwrap(), HSpec::Identity);
        assert_eq!(HSpec::parse("1 / t", None).unwrap(), HSpec::Reciprocal);
        assert_eq!(HSpec::parse("power", Some(0.3)).unwrap(), HSpec::Power(0.3));
        assert_eq!(HSpec::parse("power", None), Err(HSpecError::MissingPower));
        let h = HSpec::parse("t^2 + 1", None).unwrap();
        assert_eq!(h.eval(0.5).unwrap(), 1.25);
        assert!(HSpec::parse("x", None).is_err());
    }

    #[test]
    fn validation() {
        assert!(HSpec::Identity.validate().is_ok());
        assert!(HSpec::Reciprocal.validate().is_ok());
        assert_eq!(
            HSpec::Power(0.0).validate(),
            Err(HSpecError::InvalidPower(0.0))
        );
        assert_eq!(
            HSpec::Power(1.5).validate(),
            Err(HSpecError::InvalidPower(1.5))
        );
        let h = HSpec::parse("t - 0.5", None).unwrap();
        assert!(matches!(h.validate(), Err(HSpecError::NotPositive { .. })));
    }

    #[test]
    fn endpoint_finiteness() {
        assert!(HSpec::Identity.finite_at_endpoints());
        assert!(!HSpec::Reciprocal.finite_at_endpoints());
        assert!(!HSpec::parse("1/(1-t)", None).unwrap().finite_at_endpoints());
    }
}
