//! The endpoint-weighted deviation, the integral identity behind it, every
//! right-hand bound (three weighted bounds with a free point `x` plus the five
//! trapezoid-type baselines), the classical Hermite–Hadamard chain, and
//! verification reports.
//!
//! Derivative magnitudes at `a`, `b`, `x` and the midpoint come from
//! [`RealFunction::derivative`](crate::exprlang::RealFunction::derivative),
//! i.e. dual numbers for parsed expressions, never from finite differences.

mod bounds;
mod lemma;
mod params;
mod report;

pub use bounds::{
    baseline_from, bound_baseline, bound_thm6, bound_thm7, bound_thm8, thm6_from, thm7_from,
    thm8_from, DerivativeMagnitudes,
};
pub use lemma::{
    integral, lemma1_residual, lemma1_terms, lhs_weighted, signed_weighted_deviation, Lemma1Terms,
};
pub use params::{ExponentParams, Hypothesis, TheoremId};
pub use report::{
    certify_all, classic_hh_check, reduction_check, relative_difference, verify, verify_with,
    BoundReport, ClassicHh, EntryStatus, Hypotheses, ReductionPair, Reproduction, VerifyOptions,
    CERTIFICATION_NOTE, DEFAULT_QUAD_TOL, DEFAULT_REDUCTION_TOL, DEFAULT_SLACK_TOL, LEMMA1_NOTE,
};

pub(crate) use bounds::{abs_derivative_at, weighted_from};
