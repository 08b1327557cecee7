//! Error bounds for the three-point Simpson rule.
//!
//! Every bound except the classical one depends on `f` only through the
//! endpoint magnitudes `|f'''(a)|` and `|f'''(b)|`, carried by
//! [`BoundInputs`]. Divergent weight integrals make a bound infinite rather
//! than an error: the inequality still holds, it just says nothing.
//!
//! | theorem | hypothesis on `|f'''|`        | function                        |
//! |---------|-------------------------------|---------------------------------|
//! | Classical | `f⁗` bounded                | [`classical_bound`]             |
//! | A       | s-convex                      | [`s_convex_bound`]              |
//! | B       | `|f'''|^q` s-convex           | [`s_convex_holder_bound`]       |
//! | C       | `|f'''|^q` s-convex           | [`s_convex_power_mean_bound`]   |
//! | 2.1     | h-convex                      | [`h_convex_bound`]              |
//! | 2.2     | `|f'''|^q` h-convex           | [`h_convex_holder_bound`]       |
//! | 2.3     | `|f'''|^q` h-convex           | [`h_convex_power_mean_bound`]   |
//! | 3.1     | `|f'''|^q` (α,m)-convex       | [`alpha_m_holder_bound`]        |
//! | 3.2     | `|f'''|^q` (α,m)-convex       | [`alpha_m_power_mean_bound`]    |

use thiserror::Error;

use crate::hspec::HSpec;
use crate::interval::{Interval, IntervalError};
use crate::quad::{
    kernel_holder_integral, weight_integral, weighted_kernel_integral, KernelSide, QuadError,
    KERNEL_MASS,
};
use crate::special::{log_gamma, GammaError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundError {
    #[error("{name} = {value} must be finite and non-negative")]
    Endpoint { name: &'static str, value: f64 },
    #[error("q = {q} is not allowed here (need {need})")]
    Exponent { q: f64, need: &'static str },
    #[error("{name} = {value} is outside its admissible range")]
    Parameter { name: &'static str, value: f64 },
    #[error(transparent)]
    Interval(#[from] IntervalError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Gamma(#[from] GammaError),
}

/// Endpoint data shared by all third-derivative bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundInputs {
    pub iv: Interval,
    /// `|f'''(a)|`
    pub fa3: f64,
    /// `|f'''(b)|`
    pub fb3: f64,
    /// Exponent on `|f'''|`; `q >= 1`. The conjugate `p` is derived.
    pub q: f64,
}

impl BoundInputs {
    pub fn new(iv: Interval, fa3: f64, fb3: f64, q: f64) -> Result<Self, BoundError> {
        for (name, value) in [("|f'''(a)|", fa3), ("|f'''(b)|", fb3)] {
            if !(value.is_finite() && value >= 0.0) {
                return Err(BoundError::Endpoint { name, value });
            }
        }
        if !(q.is_finite() && q >= 1.0) {
            return Err(BoundError::Exponent { q, need: "q >= 1" });
        }
        Ok(BoundInputs { iv, fa3, fb3, q })
    }

    /// Inputs for the first-power bounds (`q = 1`).
    pub fn linear(iv: Interval, fa3: f64, fb3: f64) -> Result<Self, BoundError> {
        BoundInputs::new(iv, fa3, fb3, 1.0)
    }

    /// Conjugate exponent `q/(q-1)`; infinite for `q = 1`.
    pub fn p(&self) -> f64 {
        if self.q == 1.0 {
            f64::INFINITY
        } else {
            self.q / (self.q - 1.0)
        }
    }

    fn a_q(&self) -> f64 {
        self.fa3.powf(self.q)
    }

    fn b_q(&self) -> f64 {
        self.fb3.powf(self.q)
    }

    fn require_holder(&self) -> Result<(), BoundError> {
        if self.q > 1.0 {
            Ok(())
        } else {
            Err(BoundError::Exponent {
                q: self.q,
                need: "q > 1",
            })
        }
    }
}

/// `w·v` with the measure-theory convention `∞·0 = 0`.
fn weighted(w: f64, v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        w * v
    }
}

fn root(x: f64, q: f64) -> f64 {
    if q == 1.0 {
        x
    } else {
        x.powf(1.0 / q)
    }
}

fn check_s(s: f64) -> Result<(), BoundError> {
    if s > 0.0 && s <= 1.0 {
        Ok(())
    } else {
        Err(BoundError::Parameter {
            name: "s",
            value: s,
        })
    }
}

fn check_alpha_m(alpha: f64, m: f64) -> Result<(), BoundError> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(BoundError::Parameter {
            name: "alpha",
            value: alpha,
        });
    }
    if !(m > 0.0 && m <= 1.0) {
        return Err(BoundError::Parameter {
            name: "m",
            value: m,
        });
    }
    Ok(())
}

/// `‖f⁗‖∞ (b-a)⁵ / 2880`.
pub fn classical_bound(sup_f4: f64, iv: Interval) -> f64 {
    sup_f4 * iv.width().powi(5) / 2880.0
}

/// The two s-convex kernel coefficients
/// `∫₀^{1/2} t²(1/2-t) t^s dt` and `∫₀^{1/2} t²(1/2-t) (1-t)^s dt` in closed form.
fn s_convex_coefficients(s: f64) -> (f64, f64) {
    let scale = 2f64.powf(-4.0 - s);
    let direct = scale / ((3.0 + s) * (4.0 + s));
    let poly = 34.0 + 2f64.powf(4.0 + s) * (s - 2.0) + 11.0 * s + s * s;
    let mirrored = scale * poly / ((1.0 + s) * (2.0 + s) * (3.0 + s) * (4.0 + s));
    (direct, mirrored)
}

/// Theorem A: `|f'''|` s-convex.
pub fn s_convex_bound(s: f64, inputs: &BoundInputs) -> Result<f64, BoundError> {
    check_s(s)?;
    let prod = (1.0 + s) * (2.0 + s) * (3.0 + s) * (4.0 + s);
    let bracket = 2f64.powf(-4.0 - s)
        * ((1.0 + s) * (2.0 + s) + 34.0 + 2f64.powf(4.0 + s) * (-2.0 + s) + 11.0 * s + s * s)
        / prod;
    Ok(inputs.iv.width().powi(4) / 6.0 * bracket * (inputs.fa3 + inputs.fb3))
}

/// Theorem B: `|f'''|^q` s-convex, Hölder route (`q > 1`).
pub fn s_convex_holder_bound(s: f64, inputs: &BoundInputs) -> Result<f64, BoundError> {
    check_s(s)?;
    inputs.require_holder()?;
    let (p, q) = (inputs.p(), inputs.q);
    let gamma_ratio =
        (log_gamma(2.0 * p + 1.0)? + log_gamma(p + 1.0)? - log_gamma(3.0 * p + 2.0)?).exp();
    let prefactor =
        inputs.iv.width().powi(4) / 48.0 * 0.5f64.powf(1.0 / p) * gamma_ratio.powf(1.0 / p);
    let denom = 2f64.powf(s + 1.0) * (s + 1.0);
    let low = 1.0 / denom;
    let high = (2f64.powf(s + 1.0) - 1.0) / denom;
    let (a, b) = (inputs.a_q(), inputs.b_q());
    Ok(prefactor * (root(low * a + high * b, q) + root(high * a + low * b, q)))
}

/// Theorem C: `|f'''|^q` s-convex, power-mean route (`q >= 1`).
pub fn s_convex_power_mean_bound(s: f64, inputs: &BoundInputs) -> Result<f64, BoundError> {
    check_s(s)?;
    let q = inputs.q;
    let (direct, mirrored) = s_convex_coefficients(s);
    let (a, b) = (inputs.a_q(), inputs.b_q());
    let prefactor = inputs.iv.width().powi(4) / 6.0 * (1.0 / 192.0f64).powf(1.0 - 1.0 / q);
    Ok(prefactor * (root(direct * a + mirrored * b, q) + root(mirrored * a + direct * b, q)))
}

/// The two weighted kernel integrals of `h`, direct and mirrored.
fn kernel_weights(h: &HSpec) -> Result<(f64, f64), BoundError> {
    Ok((
        weighted_kernel_integral(h, KernelSide::Direct)?,
        weighted_kernel_integral(h, KernelSide::Mirrored)?,
    ))
}

/// Theorem 2.1: `|f'''|` h-convex.
pub fn h_convex_bound(h: &HSpec, inputs: &BoundInputs) -> Result<f64, BoundError> {
    let (direct, mirrored) = kernel_weights(h)?;
    Ok(inputs.iv.width().powi(4) / 6.0 * weighted(direct + mirrored, inputs.fa3 + inputs.fb3))
}

/// `∫₀^{1/2} h`, or infinity when the integral does not converge.
fn weight_mass(h: &HSpec, side: KernelSide) -> Result<f64, BoundError> {
    match weight_integral(h, side) {
        Ok(v) => Ok(v),
        Err(e) if e.is_divergence() => Ok(f64::INFINITY),
        Err(e) => Err(e.into()),
    }
}

/// Theorem 2.2: `|f'''|^q` h-convex, Hölder route (`q > 1`).
///
/// Infinite when `∫₀^{1/2} h` diverges (e.g. `h = 1/t`) and the matching
/// endpoint value is non-zero.
pub fn h_convex_holder_bound(h: &HSpec, inputs: &BoundInputs) -> Result<f64, BoundError> {
    inputs.require_holder()?;
    let (p, q) = (inputs.p(), inputs.q);
    let h0 = weight_mass(h, KernelSide::Direct)?;
    let h1 = weight_mass(h, KernelSide::Mirrored)?;
    let (a, b) = (inputs.a_q(), inputs.b_q());
    // (b-a)⁴/6 · (∫₀^{1/2} (t²(1/2-t))^p)^{1/p}
    let prefactor = inputs.iv.width().powi(4) / 6.0 * kernel_holder_integral(p)?.powf(1.0 / p);
    let first = weighted(h0, a) + weighted(h1, b);
    let second = weighted(h1, a) + weighted(h0, b);
    Ok(weighted(prefactor, root(first, q) + root(second, q)))
}

/// Theorem 2.3: `|f'''|^q` h-convex, power-mean route (`q >= 1`).
pub fn h_convex_power_mean_bound(h: &HSpec, inputs: &BoundInputs) -> Result<f64, BoundError> {
    let q = inputs.q;
    let (direct, mirrored) = kernel_weights(h)?;
    let (a, b) = (inputs.a_q(), inputs.b_q());
    let prefactor = inputs.iv.width().powi(4) / 6.0 * KERNEL_MASS.powf(1.0 - 1.0 / q);
    let first = weighted(direct, a) + weighted(mirrored, b);
    let second = weighted(mirrored, a) + weighted(direct, b);
    Ok(prefactor * (root(first, q) + root(second, q)))
}

/// Kernel moments against the (α,m) weights `t^α` and `1 - t^α`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaMoments {
    /// `∫₀^{1/2} t²(1/2-t) t^α dt`
    pub left_t_alpha: f64,
    /// `∫₀^{1/2} t²(1/2-t) (1-t^α) dt`
    pub left_complement: f64,
    /// `∫_{1/2}^1 (t-1)²(t-1/2) t^α dt`
    pub right_t_alpha: f64,
    /// `∫_{1/2}^1 (t-1)²(t-1/2) (1-t^α) dt`
    pub right_complement: f64,
}

impl AlphaMoments {
    pub fn left_sum(&self) -> f64 {
        self.left_t_alpha + self.left_complement
    }

    pub fn right_sum(&self) -> f64 {
        self.right_t_alpha + self.right_complement
    }
}

/// `α² + 11α + 34 - 2^{4+α}(2-α)`
fn alpha_poly(alpha: f64) -> f64 {
    alpha * alpha + 11.0 * alpha + 34.0 - 2f64.powf(4.0 + alpha) * (2.0 - alpha)
}

/// Closed forms of the four kernel moments for `α ∈ [0, 1]`.
pub fn alpha_moments(alpha: f64) -> Result<AlphaMoments, BoundError> {
    check_alpha_m(alpha, 1.0)?;
    let pa = 2f64.powf(alpha);
    let left_den = pa * (3.0 + alpha) * (4.0 + alpha);
    let right_den = pa * (1.0 + alpha) * (2.0 + alpha) * (3.0 + alpha) * (4.0 + alpha);
    let poly = alpha_poly(alpha);
    Ok(AlphaMoments {
        left_t_alpha: 1.0 / (16.0 * left_den),
        left_complement: (left_den - 12.0) / (192.0 * left_den),
        right_t_alpha: poly / (16.0 * right_den),
        right_complement: (right_den - 12.0 * poly) / (192.0 * right_den),
    })
}

/// Theorem 3.1: `|f'''|^q` (α,m)-convex, Hölder route (`q > 1`), governing
/// the Simpson error on `[a, m·b]`.
pub fn alpha_m_holder_bound(alpha: f64, m: f64, inputs: &BoundInputs) -> Result<f64, BoundError> {
    check_alpha_m(alpha, m)?;
    inputs.require_holder()?;
    let governed = inputs.iv.scaled_right(m)?;
    let (p, q) = (inputs.p(), inputs.q);
    let gamma_ratio =
        (log_gamma(2.0 * p + 1.0)? + log_gamma(p + 1.0)? - log_gamma(3.0 * p + 2.0)?).exp();
    let prefactor = governed.width().powi(4) / 96.0 * gamma_ratio.powf(1.0 / p);
    let (a, b) = (inputs.a_q(), inputs.b_q());
    let den = 2f64.powf(alpha) * (1.0 + alpha);
    let tail = 2f64.powf(1.0 + alpha) - 1.0;
    let first = (a + m * (den - 1.0) * b) / den;
    let second = (tail * a + m * (den - tail) * b) / den;
    Ok(prefactor * (root(first, q) + root(second, q)))
}

/// Theorem 3.2: `|f'''|^q` (α,m)-convex, power-mean route (`q >= 1`), in the
/// `(mb-a)⁴/1152` closed form.
pub fn alpha_m_power_mean_bound(
    alpha: f64,
    m: f64,
    inputs: &BoundInputs,
) -> Result<f64, BoundError> {
    check_alpha_m(alpha, m)?;
    let governed = inputs.iv.scaled_right(m)?;
    let q = inputs.q;
    let (a, b) = (inputs.a_q(), inputs.b_q());
    let left_den = 2f64.powf(alpha) * (3.0 + alpha) * (4.0 + alpha);
    let k = 12.0 * alpha_poly(alpha)
        / (2f64.powf(alpha) * (1.0 + alpha) * (2.0 + alpha) * (3.0 + alpha) * (4.0 + alpha));
    let first = (12.0 * a + m * (left_den - 12.0) * b) / left_den;
    let second = k * a + m * (1.0 - k) * b;
    Ok(governed.width().powi(4) / 1152.0 * (root(first, q) + root(second, q)))
}

/// Theorem 3.2 assembled directly from [`alpha_moments`] as
/// `(mb-a)⁴/6 · (1/192)^{1-1/q} · Σ (moment-weighted bracket)^{1/q}`.
pub fn alpha_m_power_mean_from_moments(
    alpha: f64,
    m: f64,
    inputs: &BoundInputs,
) -> Result<f64, BoundError> {
    check_alpha_m(alpha, m)?;
    let governed = inputs.iv.scaled_right(m)?;
    let q = inputs.q;
    let mo = alpha_moments(alpha)?;
    let (a, b) = (inputs.a_q(), inputs.b_q());
    let first = mo.left_t_alpha * a + m * mo.left_complement * b;
    let second = mo.right_t_alpha * a + m * mo.right_complement * b;
    let prefactor = governed.width().powi(4) / 6.0 * KERNEL_MASS.powf(1.0 - 1.0 / q);
    Ok(prefactor * (root(first, q) + root(second, q)))
}
