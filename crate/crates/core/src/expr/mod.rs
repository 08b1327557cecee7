//! Single-variable expressions.
//!
//! An [`Expr`] is a small immutable tree over one free variable. Exponents
//! are restricted to numeric constants so that symbolic differentiation
//! stays closed over the node set; `abs` can be evaluated but never
//! differentiated. The grammar accepted by [`parse_expr`] is documented in
//! the repository README.

mod deriv;
mod model;
mod parser;

use std::fmt;

use thiserror::Error;

pub use deriv::{differentiate, DiffError};
pub use model::FunctionModel;
pub use parser::{parse_expr, ParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Log,
    Abs,
    Sqrt,
}

impl Func {
    pub const ALL: [Func; 6] = [
        Func::Sin,
        Func::Cos,
        Func::Exp,
        Func::Log,
        Func::Abs,
        Func::Sqrt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Abs => "abs",
            Func::Sqrt => "sqrt",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }
}

/// Expression tree over a single free variable.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var,
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    /// Base raised to a constant exponent.
    Pow(Box<Expr>, f64),
    Call(Func, Box<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum EvalError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{op} is undefined at {arg}")]
    Domain { op: &'static str, arg: f64 },
    #[error("result is not finite")]
    NonFinite,
}

impl Expr {
    pub fn num(v: f64) -> Expr {
        Expr::Num(v)
    }

    pub fn var() -> Expr {
        Expr::Var
    }

    pub fn call(func: Func, arg: Expr) -> Expr {
        Expr::Call(func, Box::new(arg))
    }

    pub fn binary(op: BinOp, lhs: Expr, rhs: Expr) -> Expr {
        Expr::Binary(op, Box::new(lhs), Box::new(rhs))
    }

    pub fn powf(self, exponent: f64) -> Expr {
        Expr::Pow(Box::new(self), exponent)
    }

    /// `|self|`, the usual wrapper for convexity targets such as `|f'''|`.
    pub fn abs(self) -> Expr {
        Expr::call(Func::Abs, self)
    }

    pub fn contains_var(&self) -> bool {
        match self {
            Expr::Num(_) => false,
            Expr::Var => true,
            Expr::Neg(u) | Expr::Pow(u, _) | Expr::Call(_, u) => u.contains_var(),
            Expr::Binary(_, l, r) => l.contains_var() || r.contains_var(),
        }
    }

    pub fn node_count(&self) -> usize {
        1 + match self {
            Expr::Num(_) | Expr::Var => 0,
            Expr::Neg(u) | Expr::Pow(u, _) | Expr::Call(_, u) => u.node_count(),
            Expr::Binary(_, l, r) => l.node_count() + r.node_count(),
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64, EvalError> {
        let v = match self {
            Expr::Num(c) => *c,
            Expr::Var => x,
            Expr::Neg(u) => -u.eval(x)?,
            Expr::Binary(op, l, r) => {
                let (l, r) = (l.eval(x)?, r.eval(x)?);
                match op {
                    BinOp::Add => l + r,
                    BinOp::Sub => l - r,
                    BinOp::Mul => l * r,
                    BinOp::Div => {
                        if r == 0.0 {
                            return Err(EvalError::DivisionByZero);
                        }
                        l / r
                    }
                }
            }
            Expr::Pow(u, n) => pow(u.eval(x)?, *n)?,
            Expr::Call(func, u) => {
                let u = u.eval(x)?;
                match func {
                    Func::Sin => u.sin(),
                    Func::Cos => u.cos(),
                    Func::Exp => u.exp(),
                    Func::Abs => u.abs(),
                    Func::Log => {
                        if u <= 0.0 {
                            return Err(EvalError::Domain { op: "log", arg: u });
                        }
                        u.ln()
                    }
                    Func::Sqrt => {
                        if u < 0.0 {
                            return Err(EvalError::Domain { op: "sqrt", arg: u });
                        }
                        u.sqrt()
                    }
                }
            }
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(EvalError::NonFinite)
        }
    }

    /// Pretty-printer using `var` as the name of the free variable.
    pub fn display<'a>(&'a self, var: &'a str) -> ExprDisplay<'a> {
        ExprDisplay { expr: self, var }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Binary(op, _, _) => op.precedence(),
            Expr::Neg(_) => 3,
            Expr::Num(c) if c.is_sign_negative() => 3,
            Expr::Pow(_, _) => 4,
            Expr::Num(_) | Expr::Var | Expr::Call(_, _) => 5,
        }
    }
}

fn pow(base: f64, n: f64) -> Result<f64, EvalError> {
    if base == 0.0 && n < 0.0 {
        return Err(EvalError::DivisionByZero);
    }
    if n.fract() == 0.0 && n.abs() <= i32::MAX as f64 {
        return Ok(base.powi(n as i32));
    }
    if base < 0.0 {
        return Err(EvalError::Domain {
            op: "non-integer power",
            arg: base,
        });
    }
    Ok(base.powf(n))
}

pub struct ExprDisplay<'a> {
    expr: &'a Expr,
    var: &'a str,
}

impl ExprDisplay<'_> {
    fn child<'b>(&'b self, e: &'b Expr) -> ExprDisplay<'b> {
        ExprDisplay {
            expr: e,
            var: self.var,
        }
    }

    fn write_wrapped(&self, f: &mut fmt::Formatter<'_>, e: &Expr, wrap: bool) -> fmt::Result {
        if wrap {
            write!(f, "({})", self.child(e))
        } else {
            write!(f, "{}", self.child(e))
        }
    }
}

impl fmt::Display for ExprDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.expr {
            Expr::Num(c) => write!(f, "{c}"),
            Expr::Var => f.write_str(self.var),
            Expr::Neg(u) => {
                f.write_str("-")?;
                self.write_wrapped(f, u, u.precedence() < 3)
            }
            Expr::Binary(op, l, r) => {
                let p = op.precedence();
                self.write_wrapped(f, l, l.precedence() < p)?;
                write!(f, " {} ", op.symbol())?;
                self.write_wrapped(f, r, r.precedence() <= p)
            }
            Expr::Pow(u, n) => {
                self.write_wrapped(f, u, u.precedence() < 5)?;
                write!(f, "^{n}")
            }
            Expr::Call(func, u) => write!(f, "{}({})", func.name(), self.child(u)),
        }
    }
}
