//! Simpson's rule, the adaptive reference integral, and the Peano-kernel
//! quantities behind the error bounds.

mod gk15;
mod kernel;

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use thiserror::Error;

use crate::expr::{DiffError, EvalError, FunctionModel};
use crate::interval::{Interval, IntervalError};
use crate::special::GammaError;

pub use kernel::{
    kernel_holder_integral, kernel_p, verify_kernel_identity, weight_integral,
    weighted_kernel_integral, KernelIdentity, KernelSide, KERNEL_MASS,
};

/// Upper limit on the number of panels held by the adaptive integrator.
pub const MAX_PANELS: usize = 1_000_000;

/// Panels narrower than this fraction of the original interval are not split.
pub const MIN_PANEL_FRACTION: f64 = 1e-15;

pub const MIN_REFERENCE_TOL: f64 = 1e-14;
pub const MAX_REFERENCE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("tolerance {0} is outside [1e-14, 1e-6]")]
    Tolerance(f64),
    #[error("integration limits must be finite with a < b (got {a}, {b})")]
    Limits { a: f64, b: f64 },
    #[error("integrand failed at x = {x}: {source}")]
    Eval {
        x: f64,
        #[source]
        source: EvalError,
    },
    #[error(
        "no convergence after {panels} panels (error estimate {error:e}); the integrand may be singular"
    )]
    NonConvergence { panels: usize, error: f64 },
    #[error("rounding noise limits the error estimate to {error:e}, above the tolerance {tol:e}")]
    RoundoffLimited { error: f64, tol: f64 },
    #[error("kernel argument t = {0} is outside [0, 1]")]
    KernelDomain(f64),
    #[error("Hölder exponent p = {0} must be finite and positive")]
    Exponent(f64),
    #[error(transparent)]
    Interval(#[from] IntervalError),
    #[error(transparent)]
    Gamma(#[from] GammaError),
    #[error(transparent)]
    Diff(#[from] DiffError),
}

impl QuadError {
    /// Failure modes that indicate a divergent (or not numerically
    /// integrable) integrand rather than a usage error.
    pub fn is_divergence(&self) -> bool {
        matches!(self, QuadError::NonConvergence { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub abs_error: f64,
    pub panels: usize,
}

/// The single-panel Simpson rule `(b-a)/6 * [f(a) + 4 f(m) + f(b)]`.
pub fn simpson_rule<F, E>(f: F, iv: Interval) -> Result<f64, E>
where
    F: Fn(f64) -> Result<f64, E>,
{
    let (a, b) = (iv.a(), iv.b());
    Ok(iv.width() / 6.0 * (f(a)? + 4.0 * f(iv.midpoint())? + f(b)?))
}

pub fn simpson_estimate(f: &FunctionModel, iv: Interval) -> Result<f64, EvalError> {
    simpson_rule(|x| f.eval(x), iv)
}

/// `∫ f` over `iv` with estimated absolute error at most `tol`.
pub fn reference_integral(
    f: &FunctionModel,
    iv: Interval,
    tol: f64,
) -> Result<Integral, QuadError> {
    if !(MIN_REFERENCE_TOL..=MAX_REFERENCE_TOL).contains(&tol) {
        return Err(QuadError::Tolerance(tol));
    }
    integrate(|x| f.eval(x), iv.a(), iv.b(), tol)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub simpson_value: f64,
    pub reference_value: f64,
    pub reference_abs_error_estimate: f64,
    pub actual_error: f64,
}

pub fn quadrature_result(
    f: &FunctionModel,
    iv: Interval,
    tol: f64,
) -> Result<QuadratureResult, QuadError> {
    let simpson_value = simpson_rule(
        |x| f.eval(x).map_err(|source| QuadError::Eval { x, source }),
        iv,
    )?;
    let reference = reference_integral(f, iv, tol)?;
    Ok(QuadratureResult {
        simpson_value,
        reference_value: reference.value,
        reference_abs_error_estimate: reference.abs_error,
        actual_error: (reference.value - simpson_value).abs(),
    })
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

/// Globally adaptive Gauss–Kronrod (7/15) integration.
///
/// The panel with the largest `|K15 - G7|` is bisected until the summed
/// estimate drops to `tol`. Panels whose estimate is already at the rounding
/// floor are retired. Fails with [`QuadError::NonConvergence`] once
/// [`MAX_PANELS`] is reached or a panel shrinks below [`MIN_PANEL_FRACTION`]
/// of the interval, which is what a non-integrable singularity looks like.
pub fn integrate<F>(f: F, a: f64, b: f64, tol: f64) -> Result<Integral, QuadError>
where
    F: Fn(f64) -> Result<f64, EvalError>,
{
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(QuadError::Limits { a, b });
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(QuadError::Tolerance(tol));
    }
    let rule = |lo: f64, hi: f64| {
        gk15::apply(&f, lo, hi).map_err(|(x, source)| QuadError::Eval { x, source })
    };
    let roundoff_limited = |est: &gk15::Estimate| est.error <= 50.0 * f64::EPSILON * est.abs_value;

    let min_width = MIN_PANEL_FRACTION * (b - a);
    let mut active = BinaryHeap::new();
    let mut retired: Vec<Panel> = Vec::new();

    let first = rule(a, b)?;
    let panel = Panel {
        a,
        b,
        value: first.value,
        error: first.error,
    };
    if roundoff_limited(&first) {
        retired.push(panel);
    } else {
        active.push(panel);
    }
    let mut total_error = first.error;
    let mut panels = 1usize;

    while total_error > tol {
        let Some(worst) = active.pop() else {
            return Err(QuadError::RoundoffLimited {
                error: total_error,
                tol,
            });
        };
        let mid = 0.5 * (worst.a + worst.b);
        if panels >= MAX_PANELS || worst.b - worst.a < min_width || mid <= worst.a || mid >= worst.b
        {
            return Err(QuadError::NonConvergence {
                panels,
                error: total_error,
            });
        }
        let left = rule(worst.a, mid)?;
        let right = rule(mid, worst.b)?;
        total_error += left.error + right.error - worst.error;
        panels += 1;
        for (est, lo, hi) in [(left, worst.a, mid), (right, mid, worst.b)] {
            let p = Panel {
                a: lo,
                b: hi,
                value: est.value,
                error: est.error,
            };
            if roundoff_limited(&est) {
                retired.push(p);
            } else {
                active.push(p);
            }
        }
        if total_error <= tol {
            // incremental updates drift; confirm with a fresh sum
            total_error = active.iter().chain(&retired).map(|p| p.error).sum();
        }
    }

    let mut sum = NeumaierSum::default();
    for p in active.iter().chain(&retired) {
        sum.add(p.value);
    }
    Ok(Integral {
        value: sum.total(),
        abs_error: total_error,
        panels,
    })
}

#[derive(Default)]
struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}
