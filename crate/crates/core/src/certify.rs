//! End-to-end certificates: hypothesis check, bound, true error, verdict.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bounds::{self, BoundError, BoundInputs};
use crate::convexity::{
    check_hypothesis, ConvexityError, ConvexityHypothesis, ConvexityKind, ConvexityVerdict,
    DEFAULT_GRID_N, DEFAULT_TOL,
};
use crate::expr::{DiffError, EvalError, Expr, FunctionModel};
use crate::hspec::HSpec;
use crate::interval::{Interval, IntervalError};
use crate::quad::{quadrature_result, QuadError, MAX_REFERENCE_TOL, MIN_REFERENCE_TOL};

/// Absolute accuracy asked of the reference integral, scaled up for large
/// integrals so the request stays above the rounding floor.
const REFERENCE_TOL: f64 = 1e-13;
/// Sample count for locating `sup |f⁗|` before golden-section refinement.
const SUP_SAMPLES: usize = 2049;
const GOLDEN_ITERATIONS: usize = 80;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    Classical,
    A,
    B,
    C,
    T2_1,
    T2_2,
    T2_3,
    T3_1,
    T3_2,
}

impl TheoremId {
    pub const ALL: [TheoremId; 9] = [
        TheoremId::Classical,
        TheoremId::A,
        TheoremId::B,
        TheoremId::C,
        TheoremId::T2_1,
        TheoremId::T2_2,
        TheoremId::T2_3,
        TheoremId::T3_1,
        TheoremId::T3_2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Classical => "Classical",
            TheoremId::A => "A",
            TheoremId::B => "B",
            TheoremId::C => "C",
            TheoremId::T2_1 => "T2_1",
            TheoremId::T2_2 => "T2_2",
            TheoremId::T2_3 => "T2_3",
            TheoremId::T3_1 => "T3_1",
            TheoremId::T3_2 => "T3_2",
        }
    }

    /// Parameters that must be supplied for this theorem.
    pub fn required(self) -> &'static [Param] {
        use Param::*;
        match self {
            TheoremId::Classical => &[],
            TheoremId::A => &[S],
            TheoremId::B | TheoremId::C => &[S, Q],
            TheoremId::T2_1 => &[H],
            TheoremId::T2_2 | TheoremId::T2_3 => &[H, Q],
            TheoremId::T3_1 | TheoremId::T3_2 => &[Alpha, M, Q],
        }
    }

    /// True for the (α,m) theorems, whose Simpson error lives on `[a, m·b]`.
    pub fn uses_scaled_interval(self) -> bool {
        matches!(self, TheoremId::T3_1 | TheoremId::T3_2)
    }

    /// Hölder-route theorems need `q > 1`; the rest accept `q >= 1`.
    pub fn needs_q_above_one(self) -> bool {
        matches!(self, TheoremId::B | TheoremId::T2_2 | TheoremId::T3_1)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown theorem '{0}' (expected one of Classical, A, B, C, T2_1, T2_2, T2_3, T3_1, T3_2)")]
pub struct UnknownTheorem(pub String);

impl FromStr for TheoremId {
    type Err = UnknownTheorem;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s
            .chars()
            .filter(|c| !matches!(c, '_' | '.' | ' '))
            .collect::<String>()
            .to_ascii_lowercase();
        let id = match key.as_str() {
            "classical" => TheoremId::Classical,
            "a" => TheoremId::A,
            "b" => TheoremId::B,
            "c" => TheoremId::C,
            "t21" => TheoremId::T2_1,
            "t22" => TheoremId::T2_2,
            "t23" => TheoremId::T2_3,
            "t31" => TheoremId::T3_1,
            "t32" => TheoremId::T3_2,
            _ => return Err(UnknownTheorem(s.to_string())),
        };
        Ok(id)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Param {
    H,
    S,
    Q,
    M,
    Alpha,
}

impl Param {
    pub fn flag(self) -> &'static str {
        match self {
            Param::H => "--h",
            Param::S => "--s",
            Param::Q => "--q",
            Param::M => "--m",
            Param::Alpha => "--alpha",
        }
    }
}

/// One reason a parameter set cannot be used for a theorem.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamProblem {
    #[error("{theorem} needs {}", .param.flag())]
    Missing { theorem: TheoremId, param: Param },
    #[error("{theorem}: {message}")]
    Invalid { theorem: TheoremId, message: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertifyParams {
    pub h: Option<HSpec>,
    pub s: Option<f64>,
    pub q: Option<f64>,
    pub m: Option<f64>,
    pub alpha: Option<f64>,
    /// Overrides the sampled `sup |f⁗|` of the classical bound.
    pub sup_f4: Option<f64>,
    /// Optional cap `b*`: the (α,m) theorems then require `[a, b] ⊆ [0, b*]`.
    pub b_star: Option<f64>,
    pub grid_n: usize,
    pub tol: f64,
}

impl Default for CertifyParams {
    fn default() -> Self {
        CertifyParams {
            h: None,
            s: None,
            q: None,
            m: None,
            alpha: None,
            sup_f4: None,
            b_star: None,
            grid_n: DEFAULT_GRID_N,
            tol: DEFAULT_TOL,
        }
    }
}

impl CertifyParams {
    pub fn supplies(&self, param: Param) -> bool {
        match param {
            Param::H => self.h.is_some(),
            Param::S => self.s.is_some(),
            Param::Q => self.q.is_some(),
            Param::M => self.m.is_some(),
            Param::Alpha => self.alpha.is_some(),
        }
    }

    /// Every problem that stops `theorem` from running on `iv`, collected
    /// rather than short-circuited.
    pub fn problems(&self, theorem: TheoremId, iv: Interval) -> Vec<ParamProblem> {
        let mut out: Vec<ParamProblem> = theorem
            .required()
            .iter()
            .filter(|p| !self.supplies(**p))
            .map(|&param| ParamProblem::Missing { theorem, param })
            .collect();
        let mut invalid = |message: String| out.push(ParamProblem::Invalid { theorem, message });
        let needs = theorem.required();

        if needs.contains(&Param::S) {
            if let Some(s) = self.s {
                if !(s > 0.0 && s <= 1.0) {
                    invalid(format!("s = {s} must lie in (0, 1]"));
                }
            }
        }
        if needs.contains(&Param::Q) {
            if let Some(q) = self.q {
                if !q.is_finite() || q < 1.0 {
                    invalid(format!("q = {q} must be at least 1"));
                } else if q == 1.0 && theorem.needs_q_above_one() {
                    invalid("the Hölder route needs q > 1".to_string());
                }
            }
        }
        if needs.contains(&Param::H) {
            if let Some(h) = &self.h {
                if let Err(e) = h.validate() {
                    invalid(e.to_string());
                }
            }
        }
        if needs.contains(&Param::Alpha) {
            if let Some(alpha) = self.alpha {
                if !(0.0..=1.0).contains(&alpha) {
                    invalid(format!("alpha = {alpha} must lie in [0, 1]"));
                }
            }
        }
        if needs.contains(&Param::M) {
            if let Some(m) = self.m {
                if !(m > 0.0 && m <= 1.0) {
                    invalid(format!("m = {m} must lie in (0, 1]"));
                } else if let Err(e) = iv.scaled_right(m) {
                    invalid(e.to_string());
                }
            }
            if iv.a() < 0.0 {
                invalid(format!("a = {} must be non-negative", iv.a()));
            }
            if let Some(cap) = self.b_star {
                if let Err(e) = iv.ensure_within(cap) {
                    invalid(e.to_string());
                }
            }
        }
        if let Some(sup) = self.sup_f4 {
            if theorem == TheoremId::Classical && !(sup.is_finite() && sup >= 0.0) {
                invalid(format!(
                    "sup |f''''| = {sup} must be finite and non-negative"
                ));
            }
        }
        if self.grid_n < crate::convexity::MIN_GRID_N {
            invalid(format!("grid density {} is below 16", self.grid_n));
        }
        if !(self.tol.is_finite() && self.tol >= 0.0) {
            invalid(format!(
                "tolerance {} must be finite and non-negative",
                self.tol
            ));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReportStatus {
    /// Hypothesis passed and the bound dominates the true error.
    Certified,
    /// Hypothesis passed but the bound is infinite.
    NotInformative,
    /// The grid search found a counterexample; the bound is not guaranteed.
    HypothesisFailed,
    /// Hypothesis passed yet the true error exceeds the bound.
    Violated,
}

impl ReportStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ReportStatus::Certified => "certified",
            ReportStatus::NotInformative => "bound not informative",
            ReportStatus::HypothesisFailed => "warning: hypothesis failed",
            ReportStatus::Violated => "violated",
        }
    }

    pub fn is_success(self) -> bool {
        matches!(self, ReportStatus::Certified | ReportStatus::NotInformative)
    }
}

impl fmt::Display for ReportStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub theorem: TheoremId,
    pub params: CertifyParams,
    pub interval: Interval,
    /// Interval the Simpson rule is applied on: `[a, b]` or `[a, m·b]`.
    pub governed: Interval,
    /// `|f'''(a)|`, `|f'''(b)|`; zero for the classical bound.
    pub fa3: f64,
    pub fb3: f64,
    /// `sup |f⁗|` used by the classical bound.
    pub sup_f4: Option<f64>,
    /// `None` when the theorem has no convexity hypothesis.
    pub hypothesis_kind: Option<ConvexityKind>,
    pub hypothesis: ConvexityVerdict,
    /// `f64::INFINITY` when a weight integral diverges.
    pub bound: f64,
    pub simpson_value: f64,
    pub reference_value: f64,
    pub reference_abs_error: f64,
    pub actual_error: f64,
    /// `None` when the hypothesis failed.
    pub dominates: Option<bool>,
    /// `actual_error / bound` for finite positive bounds.
    pub ratio: Option<f64>,
    pub status: ReportStatus,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CertifyError {
    #[error("invalid parameters: {}", join(.0))]
    Params(Vec<ParamProblem>),
    #[error(transparent)]
    Diff(#[from] DiffError),
    #[error("f''' cannot be evaluated at x = {x}: {source}")]
    Eval {
        x: f64,
        #[source]
        source: EvalError,
    },
    #[error(transparent)]
    Interval(#[from] IntervalError),
    #[error(transparent)]
    Convexity(#[from] ConvexityError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Bound(#[from] BoundError),
}

fn join(problems: &[ParamProblem]) -> String {
    problems
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

/// `|e|^q`, without the power node when `q = 1`.
fn abs_power(e: &Expr, q: f64) -> Expr {
    let abs = e.clone().abs();
    if q == 1.0 {
        abs
    } else {
        abs.powf(q)
    }
}

fn eval_at(e: &Expr, x: f64) -> Result<f64, CertifyError> {
    e.eval(x).map_err(|source| CertifyError::Eval { x, source })
}

/// `sup |g|` on `iv`: dense sampling, then golden-section refinement around
/// the best sample.
pub fn sup_abs(g: &Expr, iv: Interval) -> Result<f64, CertifyError> {
    let xs = iv.grid(SUP_SAMPLES);
    let values = xs
        .iter()
        .map(|&x| eval_at(g, x).map(f64::abs))
        .collect::<Result<Vec<_>, _>>()?;
    let (k, &best) = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("grid is non-empty");
    let mut lo = xs[k.saturating_sub(1)];
    let mut hi = xs[(k + 1).min(xs.len() - 1)];
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let score = |x: f64| g.eval(x).map(f64::abs).unwrap_or(f64::NEG_INFINITY);
    let mut best = best;
    for _ in 0..GOLDEN_ITERATIONS {
        let x1 = hi - ratio * (hi - lo);
        let x2 = lo + ratio * (hi - lo);
        let (v1, v2) = (score(x1), score(x2));
        best = best.max(v1).max(v2);
        if v1 >= v2 {
            hi = x2;
        } else {
            lo = x1;
        }
    }
    Ok(best)
}

/// The convexity claim each theorem makes about `|f'''|`.
fn hypothesis_for(
    theorem: TheoremId,
    params: &CertifyParams,
    f3: &Expr,
    iv: Interval,
) -> Option<ConvexityHypothesis> {
    let q = params.q.unwrap_or(1.0);
    let (kind, target) = match theorem {
        TheoremId::Classical => return None,
        TheoremId::A => (ConvexityKind::SConvex { s: params.s? }, abs_power(f3, 1.0)),
        TheoremId::B | TheoremId::C => (ConvexityKind::SConvex { s: params.s? }, abs_power(f3, q)),
        TheoremId::T2_1 => (
            ConvexityKind::HConvex(params.h.clone()?),
            abs_power(f3, 1.0),
        ),
        TheoremId::T2_2 | TheoremId::T2_3 => {
            (ConvexityKind::HConvex(params.h.clone()?), abs_power(f3, q))
        }
        TheoremId::T3_1 | TheoremId::T3_2 => (
            ConvexityKind::AlphaMConvex {
                alpha: params.alpha?,
                m: params.m?,
            },
            abs_power(f3, q),
        ),
    };
    Some(ConvexityHypothesis::new(kind, target, iv))
}

fn run_hypothesis(
    hyp: Option<&ConvexityHypothesis>,
    params: &CertifyParams,
) -> Result<ConvexityVerdict, CertifyError> {
    let Some(hyp) = hyp else {
        return Ok(ConvexityVerdict::vacuous());
    };
    // the slack tolerance is relative to the size of the target
    let scale = hyp
        .domain
        .grid(params.grid_n)
        .into_iter()
        .map(|x| hyp.target.eval(x).map(f64::abs).unwrap_or(0.0))
        .fold(1.0, f64::max);
    Ok(check_hypothesis(hyp, params.grid_n, params.tol * scale)?)
}

fn bound_for(
    theorem: TheoremId,
    params: &CertifyParams,
    inputs: &BoundInputs,
    sup_f4: Option<f64>,
) -> Result<f64, BoundError> {
    let s = params.s.unwrap_or(1.0);
    let alpha = params.alpha.unwrap_or(1.0);
    let m = params.m.unwrap_or(1.0);
    let h = params.h.as_ref();
    let missing_h = || BoundError::Parameter {
        name: "h",
        value: f64::NAN,
    };
    match theorem {
        TheoremId::Classical => Ok(bounds::classical_bound(sup_f4.unwrap_or(0.0), inputs.iv)),
        TheoremId::A => bounds::s_convex_bound(s, inputs),
        TheoremId::B => bounds::s_convex_holder_bound(s, inputs),
        TheoremId::C => bounds::s_convex_power_mean_bound(s, inputs),
        TheoremId::T2_1 => bounds::h_convex_bound(h.ok_or_else(missing_h)?, inputs),
        TheoremId::T2_2 => bounds::h_convex_holder_bound(h.ok_or_else(missing_h)?, inputs),
        TheoremId::T2_3 => bounds::h_convex_power_mean_bound(h.ok_or_else(missing_h)?, inputs),
        TheoremId::T3_1 => bounds::alpha_m_holder_bound(alpha, m, inputs),
        TheoremId::T3_2 => bounds::alpha_m_power_mean_bound(alpha, m, inputs),
    }
}

/// True when `actual <= bound + 1e-12·(1 + bound)`.
pub fn dominates(actual: f64, bound: f64) -> bool {
    bound.is_infinite() || actual <= bound + 1e-12 * (1.0 + bound)
}

/// Runs the full pipeline for one theorem.
///
/// The hypothesis check and the numeric side (true error, bound) run
/// concurrently. A failed hypothesis is reported, not raised.
pub fn certify(
    f: &FunctionModel,
    iv: Interval,
    theorem: TheoremId,
    params: &CertifyParams,
) -> Result<BoundReport, CertifyError> {
    let problems = params.problems(theorem, iv);
    if !problems.is_empty() {
        return Err(CertifyError::Params(problems));
    }
    let governed = match (theorem.uses_scaled_interval(), params.m) {
        (true, Some(m)) => iv.scaled_right(m)?,
        _ => iv,
    };

    let (fa3, fb3, sup_f4) = if theorem == TheoremId::Classical {
        let sup = match params.sup_f4 {
            Some(v) => v,
            None => sup_abs(f.derivative(4)?, iv)?,
        };
        (0.0, 0.0, Some(sup))
    } else {
        let f3 = f.derivative(3)?;
        (eval_at(f3, iv.a())?.abs(), eval_at(f3, iv.b())?.abs(), None)
    };
    let q = if theorem.required().contains(&Param::Q) {
        params.q.unwrap_or(1.0)
    } else {
        1.0
    };
    let inputs = BoundInputs::new(iv, fa3, fb3, q)?;

    let hypothesis = if theorem == TheoremId::Classical {
        None
    } else {
        hypothesis_for(theorem, params, f.derivative(3)?, iv)
    };
    let (verdict, numeric) = rayon::join(
        || run_hypothesis(hypothesis.as_ref(), params),
        || -> Result<_, CertifyError> {
            let simpson = crate::quad::simpson_estimate(f, governed).map_err(|source| {
                CertifyError::Quad(QuadError::Eval {
                    x: governed.a(),
                    source,
                })
            })?;
            let tol = (REFERENCE_TOL * simpson.abs().max(1.0))
                .clamp(MIN_REFERENCE_TOL, MAX_REFERENCE_TOL);
            let quad = quadrature_result(f, governed, tol)?;
            let bound = bound_for(theorem, params, &inputs, sup_f4)?;
            Ok((quad, bound))
        },
    );
    let verdict = verdict?;
    let (quad, bound) = numeric?;

    let ratio = (bound.is_finite() && bound > 0.0).then(|| quad.actual_error / bound);
    let (dominates, status) = if !verdict.passed {
        (None, ReportStatus::HypothesisFailed)
    } else if bound.is_infinite() {
        (Some(true), ReportStatus::NotInformative)
    } else if dominates(quad.actual_error, bound) {
        (Some(true), ReportStatus::Certified)
    } else {
        (Some(false), ReportStatus::Violated)
    };

    Ok(BoundReport {
        theorem,
        params: params.clone(),
        interval: iv,
        governed,
        fa3,
        fb3,
        sup_f4,
        hypothesis_kind: hypothesis.map(|h| h.kind),
        hypothesis: verdict,
        bound,
        simpson_value: quad.simpson_value,
        reference_value: quad.reference_value,
        reference_abs_error: quad.reference_abs_error_estimate,
        actual_error: quad.actual_error,
        dominates,
        ratio,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(src: &str) -> FunctionModel {
        FunctionModel::parse(src, "x").unwrap()
    }

    fn unit() -> Interval {
        Interval::new(0.0, 1.0).unwrap()
    }

    #[test]
    fn theorem_ids_round_trip() {
        for id in TheoremId::ALL {
            assert_eq!(id.as_str().parse::<TheoremId>().unwrap(), id);
        }
        assert_eq!("t2.1".parse::<TheoremId>().unwrap(), TheoremId::T2_1);
        assert!("T4_1".parse::<TheoremId>().is_err());
    }

    #[test]
    fn h_convex_quartic_certificate() {
        let params = CertifyParams {
            h: Some(HSpec::Identity),
            ..Default::default()
        };
        let r = certify(&model("x^4"), unit(), TheoremId::T2_1, &params).unwrap();
        assert!((r.bound - 1.0 / 48.0).abs() <= 1e-12);
        assert!((r.actual_error - 1.0 / 120.0).abs() <= 1e-13);
        assert_eq!(r.dominates, Some(true));
        assert!((r.ratio.unwrap() - 0.4).abs() <= 1e-11);
        assert_eq!(r.status, ReportStatus::Certified);
        assert!(r.hypothesis.passed);
    }

    #[test]
    fn classical_examples() {
        let r = certify(
            &model("x^4"),
            unit(),
            TheoremId::Classical,
            &CertifyParams::default(),
        )
        .unwrap();
        assert!((r.sup_f4.unwrap() - 24.0).abs() < 1e-12);
        assert!((r.ratio.unwrap() - 1.0).abs() <= 1e-12);

        let params = CertifyParams {
            sup_f4: Some(0.0),
            ..Default::default()
        };
        let r = certify(&model("x^3"), unit(), TheoremId::Classical, &params).unwrap();
        assert_eq!(r.bound, 0.0);
        assert!(r.actual_error <= 1e-16);
        assert_eq!(r.dominates, Some(true));
        assert_eq!(r.ratio, None);
    }

    #[test]
    fn sup_refinement_finds_interior_peak() {
        // |cos| peaks at 0 inside [-1, 1.3]
        let g = crate::expr::parse_expr("cos(x - 0.123456789)", "x").unwrap();
        let sup = sup_abs(&g, Interval::new(-1.0, 1.3).unwrap()).unwrap();
        assert!((sup - 1.0).abs() < 1e-15);
    }

    #[test]
    fn failed_hypothesis_is_a_warning() {
        // h(t) + h(1-t) < 1 for h = t², so no positive function is h-convex
        let f = model("-x^5");
        let params = CertifyParams {
            h: Some(HSpec::parse("t^2", None).unwrap()),
            ..Default::default()
        };
        let r = certify(
            &f,
            Interval::new(0.5, 1.5).unwrap(),
            TheoremId::T2_1,
            &params,
        )
        .unwrap();
        assert!(!r.hypothesis.passed);
        assert!(r.hypothesis.counterexample.is_some());
        assert_eq!(r.dominates, None);
        assert_eq!(r.status, ReportStatus::HypothesisFailed);
    }

    #[test]
    fn reciprocal_weight_holder_is_not_informative() {
        let params = CertifyParams {
            h: Some(HSpec::Reciprocal),
            q: Some(2.0),
            ..Default::default()
        };
        let r = certify(
            &model("x^4"),
            Interval::new(0.5, 1.0).unwrap(),
            TheoremId::T2_2,
            &params,
        )
        .unwrap();
        assert_eq!(r.bound, f64::INFINITY);
        assert_eq!(r.status, ReportStatus::NotInformative);
        assert_eq!(r.ratio, None);
    }

    #[test]
    fn alpha_m_uses_scaled_interval() {
        let params = CertifyParams {
            alpha: Some(1.0),
            m: Some(0.5),
            q: Some(2.0),
            ..Default::default()
        };
        let r = certify(&model("x^4"), unit(), TheoremId::T3_1, &params).unwrap();
        assert_eq!(r.governed, Interval::new(0.0, 0.5).unwrap());
        // Simpson error of x⁴ on [0, 1/2] is (1/2)⁵/120
        assert!((r.actual_error - 0.5f64.powi(5) / 120.0).abs() < 1e-15);
        assert!(r.dominates.unwrap());
    }

    #[test]
    fn all_problems_reported_together() {
        let params = CertifyParams {
            s: Some(1.5),
            ..Default::default()
        };
        let problems = params.problems(TheoremId::B, unit());
        assert_eq!(problems.len(), 2, "{problems:?}");
        let params = CertifyParams {
            q: Some(1.0),
            alpha: Some(2.0),
            m: Some(0.5),
            ..Default::default()
        };
        let problems = params.problems(TheoremId::T3_1, Interval::new(0.6, 1.0).unwrap());
        assert_eq!(problems.len(), 3, "{problems:?}");
        let err = certify(
            &model("x"),
            unit(),
            TheoremId::T2_2,
            &CertifyParams::default(),
        )
        .unwrap_err();
        assert!(err.to_string().contains("--h") && err.to_string().contains("--q"));
    }
}
