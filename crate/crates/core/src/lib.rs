//! Simpson-rule error certificates.
//!
//! The crate evaluates the single-panel Simpson rule on an interval, measures
//! its true error against a high-accuracy adaptive Gauss–Kronrod oracle, and
//! compares that error with a catalog of a-priori bounds driven by the
//! endpoint magnitudes of the third derivative. Each bound is only valid under
//! a generalized convexity hypothesis on `|f'''|` (or `|f'''|^q`), which is
//! checked by grid falsification before a certificate is issued.
//!
//! Module map:
//!
//! * [`expr`]: expression parser, evaluator and exact symbolic derivatives.
//! * [`interval`]: validated closed intervals.
//! * [`quad`]: Simpson estimate, reference integral, Peano kernel helpers.
//! * [`special`]: the log-gamma function.
//! * [`hspec`]: the weight function `h` of h-convexity.
//! * [`convexity`]: grid falsification of convexity-type definitions.
//! * [`bounds`]: the bound catalog.
//! * [`certify`]: the end-to-end pipeline producing a [`BoundReport`].

#![allow(clippy::excessive_precision)]

pub mod bounds;
pub mod certify;
pub mod convexity;
pub mod expr;
pub mod hspec;
pub mod interval;
pub mod quad;
pub mod special;

pub use bounds::BoundInputs;
pub use certify::{certify, BoundReport, CertifyError, CertifyParams, ReportStatus, TheoremId};
pub use convexity::{
    check_hypothesis, ConvexityHypothesis, ConvexityKind, ConvexityVerdict, Counterexample,
};
pub use expr::{parse_expr, Expr, FunctionModel};
pub use hspec::HSpec;
pub use interval::Interval;
