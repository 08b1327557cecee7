use super::{integrate, reference_integral, simpson_estimate, QuadError};
use crate::expr::{EvalError, FunctionModel};
use crate::hspec::HSpec;
use crate::interval::Interval;
use crate::special::log_gamma;

/// `∫₀^{1/2} t²(1/2 - t) dt`, the mass of one lobe of the kernel.
pub const KERNEL_MASS: f64 = 1.0 / 192.0;

const IDENTITY_TOL: f64 = 1e-12;
const WEIGHT_TOL: f64 = 1e-13;
/// Left cut used for weights that blow up at `t = 0`.
const SINGULAR_EPS: f64 = 1e-12;

/// Peano kernel of the three-point Simpson rule on `[0, 1]`.
///
/// `t²(t - 1/2)/6` on `[0, 1/2]`, `(t - 1)²(t - 1/2)/6` on `(1/2, 1]`.
pub fn kernel_p(t: f64) -> Result<f64, QuadError> {
    if !(0.0..=1.0).contains(&t) {
        return Err(QuadError::KernelDomain(t));
    }
    Ok(if t <= 0.5 {
        t * t * (t - 0.5) / 6.0
    } else {
        let u = t - 1.0;
        u * u * (t - 0.5) / 6.0
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelIdentity {
    /// `∫ₐ^{mb} f - Simpson` on `[a, mb]`.
    pub lhs: f64,
    /// `(mb - a)⁴ ∫₀¹ p(t) f'''(ta + m(1-t)b) dt`.
    pub rhs: f64,
    pub residual: f64,
}

/// Evaluates both sides of the kernel representation of the Simpson error on
/// `[a, m*b]`; `m = 1` is the plain `[a, b]` case.
pub fn verify_kernel_identity(
    f: &FunctionModel,
    iv: Interval,
    m: f64,
) -> Result<KernelIdentity, QuadError> {
    let governed = iv.scaled_right(m)?;
    let f3 = f.derivative(3)?;
    let (a, b) = (iv.a(), iv.b());

    let integral = reference_integral(f, governed, IDENTITY_TOL)?;
    let simpson = simpson_estimate(f, governed).map_err(|source| QuadError::Eval {
        x: governed.a(),
        source,
    })?;
    let lhs = integral.value - simpson;

    let integrand = |t: f64| -> Result<f64, EvalError> {
        let p = kernel_p(t.clamp(0.0, 1.0)).expect("clamped");
        Ok(p * f3.eval(t * a + m * (1.0 - t) * b)?)
    };
    // the kernel has a kink at 1/2; integrate the lobes separately
    let left = integrate(integrand, 0.0, 0.5, 0.5 * IDENTITY_TOL)?;
    let right = integrate(integrand, 0.5, 1.0, 0.5 * IDENTITY_TOL)?;
    let rhs = governed.width().powi(4) * (left.value + right.value);

    Ok(KernelIdentity {
        lhs,
        rhs,
        residual: (lhs - rhs).abs(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelSide {
    /// Weight evaluated at `t`.
    Direct,
    /// Weight evaluated at `1 - t`.
    Mirrored,
}

impl KernelSide {
    fn weight(self, h: &HSpec, t: f64) -> Result<f64, EvalError> {
        match self {
            KernelSide::Direct => h.eval(t),
            KernelSide::Mirrored => h.eval(1.0 - t),
        }
    }
}

/// `∫₀^{1/2} t²(1/2 - t) h(t) dt` (direct) or with `h(1 - t)` (mirrored).
///
/// When the integrand cannot be evaluated at `t = 0` (e.g. `h = 1/t`) the
/// integral starts at `1e-12` and the missing sliver is added as a rectangle.
pub fn weighted_kernel_integral(h: &HSpec, side: KernelSide) -> Result<f64, QuadError> {
    let g = |t: f64| -> Result<f64, EvalError> { Ok(t * t * (0.5 - t) * side.weight(h, t)?) };
    let regular_at_zero = matches!(g(0.0), Ok(v) if v.is_finite());
    if regular_at_zero {
        return Ok(integrate(g, 0.0, 0.5, WEIGHT_TOL)?.value);
    }
    let tail = SINGULAR_EPS
        * g(SINGULAR_EPS).map_err(|source| QuadError::Eval {
            x: SINGULAR_EPS,
            source,
        })?;
    Ok(integrate(g, SINGULAR_EPS, 0.5, WEIGHT_TOL)?.value + tail)
}

/// `∫₀^{1/2} h(t) dt` (direct) or `∫₀^{1/2} h(1 - t) dt` (mirrored).
///
/// A non-integrable weight such as `1/t` surfaces as
/// [`QuadError::NonConvergence`].
pub fn weight_integral(h: &HSpec, side: KernelSide) -> Result<f64, QuadError> {
    Ok(integrate(|t| side.weight(h, t), 0.0, 0.5, WEIGHT_TOL)?.value)
}

/// `∫₀^{1/2} (t²(1/2 - t))^p dt = Γ(2p+1)Γ(p+1) / (2^{3p+1} Γ(3p+2))`,
/// evaluated in log space.
pub fn kernel_holder_integral(p: f64) -> Result<f64, QuadError> {
    if !(p.is_finite() && p > 0.0) {
        return Err(QuadError::Exponent(p));
    }
    let ln = log_gamma(2.0 * p + 1.0)? + log_gamma(p + 1.0)?
        - (3.0 * p + 1.0) * std::f64::consts::LN_2
        - log_gamma(3.0 * p + 2.0)?;
    Ok(ln.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(src: &str) -> FunctionModel {
        FunctionModel::parse(src, "x").unwrap()
    }

    #[test]
    fn kernel_values() {
        for t in [0.0, 0.5, 1.0] {
            assert_eq!(kernel_p(t).unwrap(), 0.0);
        }
        assert!((kernel_p(0.25).unwrap() + 1.0 / 384.0).abs() < 1e-18);
        assert!((kernel_p(0.3).unwrap() + kernel_p(0.7).unwrap()).abs() < 1e-18);
        assert_eq!(kernel_p(-0.1), Err(QuadError::KernelDomain(-0.1)));
        assert!(kernel_p(1.0 + 1e-12).is_err());
        assert!(kernel_p(f64::NAN).is_err());
    }

    #[test]
    fn kernel_antisymmetry_on_grid() {
        let n = 10_000;
        for i in 0..=n {
            let t = i as f64 / n as f64;
            let lhs = kernel_p(t).unwrap();
            let rhs = -kernel_p(1.0 - t).unwrap();
            assert!((lhs - rhs).abs() <= 1e-15, "t={t}");
        }
    }

    #[test]
    fn kernel_integrates_to_zero() {
        let f = |t: f64| Ok(kernel_p(t).unwrap());
        let left = integrate(f, 0.0, 0.5, 1e-15).unwrap().value;
        let right = integrate(f, 0.5, 1.0, 1e-15).unwrap().value;
        assert!((left + 1.0 / 1152.0).abs() < 1e-16);
        assert!((left + right).abs() <= 1e-12);
    }

    #[test]
    fn identity_quartic() {
        let id =
            verify_kernel_identity(&model("x^4"), Interval::new(0.0, 1.0).unwrap(), 1.0).unwrap();
        assert!((id.lhs + 1.0 / 120.0).abs() <= 1e-12);
        assert!(id.residual <= 1e-10);
        let id =
            verify_kernel_identity(&model("x^4"), Interval::new(0.0, 1.0).unwrap(), 0.5).unwrap();
        assert!(id.residual <= 1e-10);
    }

    #[test]
    fn identity_cubic_is_zero() {
        for (a, b) in [(0.0, 1.0), (-1.0, 2.0), (1.0, 3.0)] {
            let id =
                verify_kernel_identity(&model("x^3"), Interval::new(a, b).unwrap(), 1.0).unwrap();
            assert!(id.residual <= 1e-10);
            assert!(id.lhs.abs() <= 1e-12 && id.rhs.abs() <= 1e-12);
        }
    }

    #[test]
    fn identity_requires_a_below_mb() {
        let err = verify_kernel_identity(&model("x^4"), Interval::new(0.6, 1.0).unwrap(), 0.5)
            .unwrap_err();
        assert!(matches!(err, QuadError::Interval(_)));
    }

    #[test]
    fn weighted_integrals_match_antiderivatives() {
        let one = weighted_kernel_integral(&HSpec::One, KernelSide::Direct).unwrap();
        assert!((one - 1.0 / 192.0).abs() < 1e-16);
        let t = weighted_kernel_integral(&HSpec::Identity, KernelSide::Direct).unwrap();
        assert!((t - 1.0 / 640.0).abs() < 1e-16);
        let t1 = weighted_kernel_integral(&HSpec::Identity, KernelSide::Mirrored).unwrap();
        assert!((t1 - 7.0 / 1920.0).abs() < 1e-16);
        // h = 1/t: ∫ t (1/2 - t) dt = 1/48
        let r = weighted_kernel_integral(&HSpec::Reciprocal, KernelSide::Direct).unwrap();
        assert!((r - 1.0 / 48.0).abs() < 1e-14);
    }

    #[test]
    fn small_power_approaches_constant_weight() {
        let w = weighted_kernel_integral(&HSpec::Power(1e-6), KernelSide::Direct).unwrap();
        assert!((w - 1.0 / 192.0).abs() < 1e-7);
    }

    #[test]
    fn weight_integrals() {
        assert!(
            (weight_integral(&HSpec::Identity, KernelSide::Direct).unwrap() - 0.125).abs() < 1e-16
        );
        assert!(
            (weight_integral(&HSpec::Identity, KernelSide::Mirrored).unwrap() - 0.375).abs()
                < 1e-16
        );
        let ln2 = weight_integral(&HSpec::Reciprocal, KernelSide::Mirrored).unwrap();
        assert!((ln2 - std::f64::consts::LN_2).abs() < 1e-13);
        let err = weight_integral(&HSpec::Reciprocal, KernelSide::Direct).unwrap_err();
        assert!(err.is_divergence());
    }

    #[test]
    fn holder_integral_closed_forms() {
        let v = kernel_holder_integral(1.0).unwrap();
        assert!((v * 192.0 - 1.0).abs() < 1e-14, "{v}");
        assert!((kernel_holder_integral(2.0).unwrap() / (1.0 / 13440.0) - 1.0).abs() < 1e-13);
        assert!(kernel_holder_integral(f64::NAN).is_err());
        assert!(kernel_holder_integral(0.0).is_err());
    }

    #[test]
    fn holder_integral_matches_quadrature() {
        for p in [1.0, 1.25, 1.5, 2.0, 3.0, 5.0] {
            let closed = kernel_holder_integral(p).unwrap();
            let numeric = integrate(
                |t| Ok((t * t * (0.5 - t)).powf(p)),
                0.0,
                0.5,
                1e-13 * closed,
            )
            .unwrap()
            .value;
            assert!(((closed - numeric) / closed).abs() <= 1e-10, "p={p}");
        }
    }
}
