#![allow(clippy::redundant_guards)]
use thiserror::Error;

use super::{BinOp, Expr, Func};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum DiffError {
    #[error("derivative order {0} is outside 1..=4")]
    InvalidOrder(u32),
    #[error("`{0}` is not differentiable")]
    NonDifferentiable(&'static str),
}

/// Exact symbolic derivative of the given order (1 to 4).
///
/// Constructors fold trivial constants (`0 * u`, `1 * u`, `u + 0`) so the
/// fourth derivative of a product stays small; nothing else is simplified.
pub fn differentiate(e: &Expr, order: u32) -> Result<Expr, DiffError> {
    if !(1..=4).contains(&order) {
        return Err(DiffError::InvalidOrder(order));
    }
    let mut d = d1(e)?;
    for _ in 1..order {
        d = d1(&d)?;
    }
    Ok(d)
}

pub(super) fn d1(e: &Expr) -> Result<Expr, DiffError> {
    if !e.contains_var() {
        return Ok(Expr::Num(0.0));
    }
    Ok(match e {
        Expr::Num(_) => Expr::Num(0.0),
        Expr::Var => Expr::Num(1.0),
        Expr::Neg(u) => neg(d1(u)?),
        Expr::Binary(op, u, v) => {
            let (du, dv) = (d1(u)?, d1(v)?);
            match op {
                BinOp::Add => add(du, dv),
                BinOp::Sub => sub(du, dv),
                BinOp::Mul => add(mul(du, (**v).clone()), mul((**u).clone(), dv)),
                BinOp::Div => {
                    if !v.contains_var() {
                        div(du, (**v).clone())
                    } else {
                        let num = sub(mul(du, (**v).clone()), mul((**u).clone(), dv));
                        div(num, (**v).clone().powf(2.0))
                    }
                }
            }
        }
        Expr::Pow(u, n) => {
            let n = *n;
            if n == 0.0 {
                return Ok(Expr::Num(0.0));
            }
            let reduced = if n - 1.0 == 0.0 {
                Expr::Num(1.0)
            } else if n - 1.0 == 1.0 {
                (**u).clone()
            } else {
                (**u).clone().powf(n - 1.0)
            };
            mul(mul(Expr::Num(n), reduced), d1(u)?)
        }
        Expr::Call(func, u) => {
            let du = d1(u)?;
            let u = (**u).clone();
            match func {
                Func::Sin => mul(Expr::call(Func::Cos, u), du),
                Func::Cos => mul(neg(Expr::call(Func::Sin, u)), du),
                Func::Exp => mul(Expr::call(Func::Exp, u), du),
                Func::Log => div(du, u),
                Func::Sqrt => div(du, mul(Expr::Num(2.0), Expr::call(Func::Sqrt, u))),
                Func::Abs => return Err(DiffError::NonDifferentiable("abs")),
            }
        }
    })
}

fn as_num(e: &Expr) -> Option<f64> {
    match e {
        Expr::Num(c) => Some(*c),
        _ => None,
    }
}

fn neg(u: Expr) -> Expr {
    match u {
        Expr::Num(c) => Expr::Num(-c),
        Expr::Neg(inner) => *inner,
        u => Expr::Neg(Box::new(u)),
    }
}

fn add(u: Expr, v: Expr) -> Expr {
    match (as_num(&u), as_num(&v)) {
        (Some(a), Some(b)) => Expr::Num(a + b),
        (Some(a), _) if a == 0.0 => v,
        (_, Some(b)) if b == 0.0 => u,
        _ => Expr::binary(BinOp::Add, u, v),
    }
}

fn sub(u: Expr, v: Expr) -> Expr {
    match (as_num(&u), as_num(&v)) {
        (Some(a), Some(b)) => Expr::Num(a - b),
        (Some(a), _) if a == 0.0 => neg(v),
        (_, Some(b)) if b == 0.0 => u,
        _ => Expr::binary(BinOp::Sub, u, v),
    }
}

fn mul(u: Expr, v: Expr) -> Expr {
    match (as_num(&u), as_num(&v)) {
        (Some(a), Some(b)) => Expr::Num(a * b),
        (Some(a), _) | (_, Some(a)) if a == 0.0 => Expr::Num(0.0),
        (Some(a), _) if a == 1.0 => v,
        (_, Some(b)) if b == 1.0 => u,
        (Some(a), _) if a == -1.0 => neg(v),
        (_, Some(b)) if b == -1.0 => neg(u),
        // collect numeric factors on the left: a * (b * w) -> (a*b) * w
        (Some(a), None) => match v {
            Expr::Binary(BinOp::Mul, l, r) if as_num(&l).is_some() => {
                mul(Expr::Num(a * as_num(&l).unwrap()), *r)
            }
            v => Expr::binary(BinOp::Mul, Expr::Num(a), v),
        },
        (None, Some(b)) => mul(Expr::Num(b), u),
        (None, None) => Expr::binary(BinOp::Mul, u, v),
    }
}

fn div(u: Expr, v: Expr) -> Expr {
    match (as_num(&u), as_num(&v)) {
        (Some(a), _) if a == 0.0 => Expr::Num(0.0),
        (_, Some(b)) if b == 1.0 => u,
        _ => Expr::binary(BinOp::Div, u, v),
    }
}
