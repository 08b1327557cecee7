//! Grid falsification of convexity-type definitions.
//!
//! Every class handled here is defined by an inequality of the shape
//!
//! ```text
//! f(t·x + c·(1-t)·y) <= wx(t)·f(x) + wy(t)·f(y)
//! ```
//!
//! with `c = m` for the m- and (α,m)-convex classes and `c = 1` otherwise.
//! The checker evaluates the slack `rhs - lhs` on an `n × n × n` grid of
//! `(x, y, t)` and reports the worst point. A pass means "not falsified at
//! this density", not a proof.

use rayon::prelude::*;
use thiserror::Error;

use crate::expr::{EvalError, Expr};
use crate::hspec::{HSpec, HSpecError};
use crate::interval::Interval;

pub const DEFAULT_GRID_N: usize = 64;
pub const DEFAULT_TOL: f64 = 1e-9;
pub const MIN_GRID_N: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub enum ConvexityKind {
    /// Class Q(I): `f(z) <= f(x)/t + f(y)/(1-t)`, `t` in the open unit interval.
    GodunovaLevin,
    /// Class P(I): `f(z) <= f(x) + f(y)`.
    PFunction,
    /// `K_s²`: `f(z) <= t^s f(x) + (1-t)^s f(y)`.
    SConvex { s: f64 },
    /// `SX(h, I)`: `f(z) <= h(t) f(x) + h(1-t) f(y)`.
    HConvex(HSpec),
    /// `f(tx + m(1-t)y) <= t f(x) + m(1-t) f(y)`.
    MConvex { m: f64 },
    /// `f(tx + m(1-t)y) <= t^α f(x) + m(1 - t^α) f(y)`.
    AlphaMConvex { alpha: f64, m: f64 },
}

impl ConvexityKind {
    pub fn name(&self) -> String {
        match self {
            ConvexityKind::GodunovaLevin => "Godunova-Levin".into(),
            ConvexityKind::PFunction => "P-function".into(),
            ConvexityKind::SConvex { s } => format!("s-convex (s = {s})"),
            ConvexityKind::HConvex(h) => format!("h-convex (h = {h})"),
            ConvexityKind::MConvex { m } => format!("m-convex (m = {m})"),
            ConvexityKind::AlphaMConvex { alpha, m } => {
                format!("(alpha,m)-convex (alpha = {alpha}, m = {m})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConvexityError {
    #[error("grid density {0} is below the minimum of 16")]
    GridTooSmall(usize),
    #[error("tolerance {0} must be finite and non-negative")]
    Tolerance(f64),
    #[error("{name} = {value} is outside its admissible range")]
    Parameter { name: &'static str, value: f64 },
    #[error(transparent)]
    Weight(#[from] HSpecError),
    #[error("m- and (alpha,m)-convexity need a domain inside [0, b*]; got a = {0}")]
    NegativeDomain(f64),
    #[error("target cannot be evaluated at {point}: {source}")]
    Eval {
        point: f64,
        #[source]
        source: EvalError,
    },
    #[error("weight cannot be evaluated at t = {t}: {source}")]
    WeightEval {
        t: f64,
        #[source]
        source: EvalError,
    },
    #[error("target is negative on the grid (minimum {0})")]
    NegativeTarget(f64),
}

/// A claim that `target` belongs to the class `kind` on `domain`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexityHypothesis {
    pub kind: ConvexityKind,
    /// Usually `|f'''|` or `|f'''|^q`.
    pub target: Expr,
    pub domain: Interval,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Counterexample {
    pub x: f64,
    pub y: f64,
    pub t: f64,
    pub lhs: f64,
    pub rhs: f64,
}

impl Counterexample {
    pub fn slack(&self) -> f64 {
        self.rhs - self.lhs
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvexityVerdict {
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
    pub grid_density: usize,
    /// Minimum of `rhs - lhs` over the grid.
    pub slack_min: f64,
    /// Minimum of the target over the `x` grid.
    pub target_min: f64,
}

impl ConvexityVerdict {
    /// Verdict for hypotheses that need no grid search.
    pub fn vacuous() -> Self {
        ConvexityVerdict {
            passed: true,
            counterexample: None,
            grid_density: 0,
            slack_min: f64::INFINITY,
            target_min: f64::NAN,
        }
    }
}

/// Weights of one `t` node: `rhs = wx·f(x) + wy·f(y)`, `z = t·x + c·s·y`.
#[derive(Debug, Clone, Copy)]
struct TNode {
    t: f64,
    /// `1 - t`, exact because `t` is a multiple of 2⁻⁵².
    s: f64,
    wx: f64,
    wy: f64,
}

impl ConvexityHypothesis {
    pub fn new(kind: ConvexityKind, target: Expr, domain: Interval) -> Self {
        ConvexityHypothesis {
            kind,
            target,
            domain,
        }
    }

    fn validate(&self) -> Result<(), ConvexityError> {
        let unit = |name, v: f64, open_low: bool| {
            let ok = if open_low {
                v > 0.0 && v <= 1.0
            } else {
                (0.0..=1.0).contains(&v)
            };
            if ok {
                Ok(())
            } else {
                Err(ConvexityError::Parameter { name, value: v })
            }
        };
        match &self.kind {
            ConvexityKind::SConvex { s } => unit("s", *s, true)?,
            ConvexityKind::HConvex(h) => h.validate()?,
            ConvexityKind::MConvex { m } => unit("m", *m, false)?,
            ConvexityKind::AlphaMConvex { alpha, m } => {
                unit("alpha", *alpha, false)?;
                unit("m", *m, false)?;
            }
            ConvexityKind::GodunovaLevin | ConvexityKind::PFunction => {}
        }
        if matches!(
            self.kind,
            ConvexityKind::MConvex { .. } | ConvexityKind::AlphaMConvex { .. }
        ) && self.domain.a() < 0.0
        {
            return Err(ConvexityError::NegativeDomain(self.domain.a()));
        }
        Ok(())
    }

    /// Scale applied to `(1 - t)·y` inside the argument.
    fn contraction(&self) -> f64 {
        match self.kind {
            ConvexityKind::MConvex { m } | ConvexityKind::AlphaMConvex { m, .. } => m,
            _ => 1.0,
        }
    }

    fn open_t_grid(&self) -> bool {
        match &self.kind {
            ConvexityKind::GodunovaLevin => true,
            ConvexityKind::HConvex(h) => !h.finite_at_endpoints(),
            _ => false,
        }
    }

    fn node(&self, t: f64, s: f64) -> Result<TNode, ConvexityError> {
        let (wx, wy) = match &self.kind {
            ConvexityKind::GodunovaLevin => (1.0 / t, 1.0 / s),
            ConvexityKind::PFunction => (1.0, 1.0),
            ConvexityKind::SConvex { s: p } => (t.powf(*p), s.powf(*p)),
            ConvexityKind::HConvex(h) => {
                let w = |u: f64| {
                    h.eval(u)
                        .map_err(|source| ConvexityError::WeightEval { t: u, source })
                };
                (w(t)?, w(s)?)
            }
            ConvexityKind::MConvex { m } => (t, m * s),
            ConvexityKind::AlphaMConvex { alpha, m } => {
                let ta = t.powf(*alpha);
                (ta, m * (1.0 - ta))
            }
        };
        Ok(TNode { t, s, wx, wy })
    }

    fn t_nodes(&self, n: usize) -> Result<Vec<TNode>, ConvexityError> {
        symmetric_unit_grid(n, self.open_t_grid())
            .into_iter()
            .map(|(t, s)| self.node(t, s))
            .collect()
    }

    fn eval_target(&self, point: f64) -> Result<f64, ConvexityError> {
        self.target
            .eval(point)
            .map_err(|source| ConvexityError::Eval { point, source })
    }

    /// `(lhs, rhs)` of the defining inequality at one point.
    pub fn sides_at(&self, x: f64, y: f64, t: f64) -> Result<(f64, f64), ConvexityError> {
        let node = self.node(t, 1.0 - t)?;
        let z = node.t * x + self.contraction() * node.s * y;
        let lhs = self.eval_target(z)?;
        let rhs = node.wx * self.eval_target(x)? + node.wy * self.eval_target(y)?;
        Ok((lhs, rhs))
    }
}

/// `n` parameter values with their complements, symmetric under `t ↦ 1 - t`.
///
/// Values are rounded to multiples of 2⁻⁵² so that `1 - t` is exact and the
/// mirror of every node is itself a node.
fn symmetric_unit_grid(n: usize, open: bool) -> Vec<(f64, f64)> {
    const SCALE: f64 = (1u64 << 52) as f64;
    let denom = if open { n + 1 } else { n - 1 } as f64;
    let offset = usize::from(open);
    let quantum = |i: usize| -> u64 { (((i + offset) as f64 / denom) * SCALE).round() as u64 };
    let total = 1u64 << 52;
    (0..n)
        .map(|i| {
            let mirror = n - 1 - i;
            let q = if i <= mirror {
                quantum(i)
            } else {
                total - quantum(mirror)
            };
            (q as f64 / SCALE, (total - q) as f64 / SCALE)
        })
        .collect()
}

#[derive(Debug, Clone, Copy)]
struct Worst {
    slack: f64,
    x: f64,
    y: f64,
    t: f64,
    lhs: f64,
    rhs: f64,
}

impl Worst {
    fn key_lt(&self, other: &Worst) -> bool {
        (self.slack, self.x, self.y, self.t)
            .partial_cmp(&(other.slack, other.x, other.y, other.t))
            .is_some_and(|o| o.is_lt())
    }

    fn min(self, other: Worst) -> Worst {
        if other.key_lt(&self) {
            other
        } else {
            self
        }
    }
}

/// Evaluates the defining inequality of `hyp` on a `grid_n³` lattice.
///
/// Passes iff `lhs <= rhs + tol` at every node; otherwise the worst node is
/// returned as the counterexample, ties broken by the smallest
/// `(slack, x, y, t)`.
pub fn check_hypothesis(
    hyp: &ConvexityHypothesis,
    grid_n: usize,
    tol: f64,
) -> Result<ConvexityVerdict, ConvexityError> {
    if grid_n < MIN_GRID_N {
        return Err(ConvexityError::GridTooSmall(grid_n));
    }
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(ConvexityError::Tolerance(tol));
    }
    hyp.validate()?;

    let xs = hyp.domain.grid(grid_n);
    let fx: Vec<f64> = xs
        .iter()
        .map(|&x| hyp.eval_target(x))
        .collect::<Result<_, _>>()?;
    let nodes = hyp.t_nodes(grid_n)?;
    let c = hyp.contraction();

    let worst = (0..grid_n)
        .into_par_iter()
        .map(|i| -> Result<Option<Worst>, ConvexityError> {
            let mut worst: Option<Worst> = None;
            for j in 0..grid_n {
                for node in &nodes {
                    let (x, y) = (xs[i], xs[j]);
                    let lhs = hyp.eval_target(node.t * x + c * node.s * y)?;
                    let rhs = node.wx * fx[i] + node.wy * fx[j];
                    let cand = Worst {
                        slack: rhs - lhs,
                        x,
                        y,
                        t: node.t,
                        lhs,
                        rhs,
                    };
                    worst = Some(worst.map_or(cand, |w| w.min(cand)));
                }
            }
            Ok(worst)
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .reduce(Worst::min)
        .expect("grid is non-empty");

    let passed = worst.slack >= -tol;
    Ok(ConvexityVerdict {
        passed,
        counterexample: (!passed).then_some(Counterexample {
            x: worst.x,
            y: worst.y,
            t: worst.t,
            lhs: worst.lhs,
            rhs: worst.rhs,
        }),
        grid_density: grid_n,
        slack_min: worst.slack,
        target_min: fx.iter().copied().fold(f64::INFINITY, f64::min),
    })
}

/// Membership of one target in the builtin classes.
#[derive(Debug, Clone, PartialEq)]
pub struct InclusionReport {
    pub s: f64,
    /// `SX(t, I)`, i.e. non-negative convex.
    pub h_identity: ConvexityVerdict,
    /// `SX(1, I)`.
    pub h_one: ConvexityVerdict,
    /// `SX(1/t, I)`.
    pub h_reciprocal: ConvexityVerdict,
    /// `SX(t^s, I)`.
    pub h_power: ConvexityVerdict,
    pub p_function: ConvexityVerdict,
    pub godunova_levin: ConvexityVerdict,
    pub s_convex: ConvexityVerdict,
}

impl InclusionReport {
    /// The class relations that must hold whatever the target:
    /// `SX(1) ⊇ P`, `SX(t^s) ⊇ K_s²`, `SX(1/t) = Q`, and `SX(t) ⊆ SX(1/t)`,
    /// `SX(t) ⊆ SX(t^s) ⊆ SX(1)` since the weights are ordered on `(0, 1)`.
    pub fn chain_consistent(&self) -> bool {
        let implies = |a: &ConvexityVerdict, b: &ConvexityVerdict| !a.passed || b.passed;
        implies(&self.p_function, &self.h_one)
            && implies(&self.s_convex, &self.h_power)
            && self.h_reciprocal.passed == self.godunova_levin.passed
            && implies(&self.h_identity, &self.h_power)
            && implies(&self.h_power, &self.h_one)
            && implies(&self.h_identity, &self.h_reciprocal)
    }
}

/// Runs the builtin h-convexity checks (`h ∈ {t, 1, 1/t, t^s}`) next to the
/// named classes they contain.
pub fn class_inclusion_probe(
    target: &Expr,
    domain: Interval,
    s: f64,
    grid_n: usize,
    tol: f64,
) -> Result<InclusionReport, ConvexityError> {
    let check = |kind: ConvexityKind| {
        check_hypothesis(
            &ConvexityHypothesis::new(kind, target.clone(), domain),
            grid_n,
            tol,
        )
    };
    let h_identity = check(ConvexityKind::HConvex(HSpec::Identity))?;
    if h_identity.target_min < -tol {
        return Err(ConvexityError::NegativeTarget(h_identity.target_min));
    }
    Ok(InclusionReport {
        s,
        h_identity,
        h_one: check(ConvexityKind::HConvex(HSpec::One))?,
        h_reciprocal: check(ConvexityKind::HConvex(HSpec::Reciprocal))?,
        h_power: check(ConvexityKind::HConvex(HSpec::Power(s)))?,
        p_function: check(ConvexityKind::PFunction)?,
        godunova_levin: check(ConvexityKind::GodunovaLevin)?,
        s_convex: check(ConvexityKind::SConvex { s })?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;

    fn target(src: &str) -> Expr {
        parse_expr(src, "x").unwrap()
    }

    fn unit() -> Interval {
        Interval::new(0.0, 1.0).unwrap()
    }

    fn verdict(kind: ConvexityKind, src: &str, domain: Interval) -> ConvexityVerdict {
        check_hypothesis(
            &ConvexityHypothesis::new(kind, target(src), domain),
            DEFAULT_GRID_N,
            DEFAULT_TOL,
        )
        .unwrap()
    }

    #[test]
    fn linear_target_is_convex() {
        let v = verdict(ConvexityKind::HConvex(HSpec::Identity), "24*x", unit());
        assert!(v.passed);
        assert!(v.counterexample.is_none());
        assert_eq!(v.grid_density, 64);
        let v = verdict(
            ConvexityKind::AlphaMConvex { alpha: 1.0, m: 1.0 },
            "24*x",
            unit(),
        );
        assert!(v.passed);
    }

    #[test]
    fn concave_parabola_midpoint_counterexample() {
        let v = verdict(ConvexityKind::HConvex(HSpec::Identity), "-x^2", unit());
        assert!(!v.passed);
        let c = v.counterexample.unwrap();
        assert_eq!((c.x, c.y), (0.0, 1.0));
        assert!((c.t - 0.5).abs() < 0.02);
        assert!((c.lhs + 0.25).abs() < 1e-2 && (c.rhs + 0.5).abs() < 1e-2);
        assert!(v.slack_min <= -0.2);
        assert_eq!(c.slack(), v.slack_min);
    }

    #[test]
    fn odd_grid_hits_the_midpoint_exactly() {
        let v = check_hypothesis(
            &ConvexityHypothesis::new(
                ConvexityKind::HConvex(HSpec::Identity),
                target("-x^2"),
                unit(),
            ),
            65,
            DEFAULT_TOL,
        )
        .unwrap();
        let c = v.counterexample.unwrap();
        assert_eq!((c.x, c.y, c.t), (0.0, 1.0, 0.5));
        assert_eq!((c.lhs, c.rhs), (-0.25, -0.5));
    }

    #[test]
    fn t_grid_is_symmetric_and_exact() {
        for open in [false, true] {
            let g = symmetric_unit_grid(64, open);
            for (i, &(t, s)) in g.iter().enumerate() {
                assert_eq!(t + s, 1.0);
                assert_eq!(1.0 - t, s);
                assert_eq!(g[63 - i], (s, t));
            }
            if open {
                assert!(g[0].0 > 0.0 && g[63].0 < 1.0);
            } else {
                assert_eq!((g[0].0, g[63].0), (0.0, 1.0));
            }
        }
    }

    #[test]
    fn godunova_levin_uses_open_parameter_grid() {
        let v = verdict(ConvexityKind::GodunovaLevin, "24*x", unit());
        assert!(v.passed);
        // 1/t weight is undefined at 0, so h-convexity switches to the open grid too
        let v = verdict(ConvexityKind::HConvex(HSpec::Reciprocal), "24*x", unit());
        assert!(v.passed);
    }

    #[test]
    fn parameter_validation() {
        let hyp = |kind| ConvexityHypothesis::new(kind, target("x"), unit());
        assert!(matches!(
            check_hypothesis(&hyp(ConvexityKind::SConvex { s: 0.0 }), 64, 1e-9),
            Err(ConvexityError::Parameter { name: "s", .. })
        ));
        assert!(matches!(
            check_hypothesis(
                &hyp(ConvexityKind::AlphaMConvex { alpha: 1.2, m: 1.0 }),
                64,
                1e-9
            ),
            Err(ConvexityError::Parameter { name: "alpha", .. })
        ));
        assert_eq!(
            check_hypothesis(&hyp(ConvexityKind::PFunction), 8, 1e-9),
            Err(ConvexityError::GridTooSmall(8))
        );
        let neg = ConvexityHypothesis::new(
            ConvexityKind::MConvex { m: 0.5 },
            target("x"),
            Interval::new(-1.0, 1.0).unwrap(),
        );
        assert_eq!(
            check_hypothesis(&neg, 64, 1e-9),
            Err(ConvexityError::NegativeDomain(-1.0))
        );
        let bad_h = hyp(ConvexityKind::HConvex(HSpec::Power(2.0)));
        assert!(matches!(
            check_hypothesis(&bad_h, 64, 1e-9),
            Err(ConvexityError::Weight(_))
        ));
    }

    #[test]
    fn evaluation_errors_report_the_point() {
        let hyp = ConvexityHypothesis::new(ConvexityKind::PFunction, target("log(x)"), unit());
        match check_hypothesis(&hyp, 16, 1e-9) {
            Err(ConvexityError::Eval { point, .. }) => assert_eq!(point, 0.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn m_convex_star_shaped_target() {
        // convex with f(0) = 0, so m-convex for every m
        for m in [0.25, 0.5, 1.0] {
            assert!(verdict(ConvexityKind::MConvex { m }, "x^2", unit()).passed);
        }
        // f(0) > 0 breaks m-convexity for m < 1 at x = y = 0
        let v = verdict(ConvexityKind::MConvex { m: 0.5 }, "x^2 + 1", unit());
        assert!(!v.passed);
    }

    #[test]
    fn inclusion_probe_examples() {
        let r = class_inclusion_probe(&target("24*x"), unit(), 0.5, 32, 1e-9).unwrap();
        assert!(r.h_identity.passed && r.h_reciprocal.passed && r.godunova_levin.passed);
        assert!(r.chain_consistent());

        let r = class_inclusion_probe(&target("1"), unit(), 0.5, 32, 1e-9).unwrap();
        assert!(r.p_function.passed && r.h_one.passed);
        assert!(r.chain_consistent());

        let r = class_inclusion_probe(&target("sqrt(x)"), unit(), 0.5, 32, 1e-9).unwrap();
        assert!(r.s_convex.passed && r.h_power.passed);
        assert!(r.chain_consistent());

        assert!(matches!(
            class_inclusion_probe(&target("x - 1"), unit(), 0.5, 32, 1e-9),
            Err(ConvexityError::NegativeTarget(_))
        ));
    }
}
