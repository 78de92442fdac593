use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::bounds::{
    abs_derivative_at, ensure_in_interval, weighted_from, DerivativeMagnitudes,
};
use super::lemma::{integral, lemma1_terms, signed_weighted_deviation};
use super::params::{ExponentParams, Hypothesis, TheoremId};
use crate::error::{Error, Result};
use crate::exprlang::RealFunction;
use crate::numerics::Interval;
use crate::quasiconvexity::{certify_derivative_power, Certificate, CertifyOptions};

pub const DEFAULT_QUAD_TOL: f64 = 1e-10;
pub const DEFAULT_SLACK_TOL: f64 = 1e-9;
pub const DEFAULT_REDUCTION_TOL: f64 = 1e-12;

pub const LEMMA1_NOTE: &str = "identity residual evaluated with (t-1) on the a-side \
integral and (1-t) on the b-side integral, as printed";
pub const CERTIFICATION_NOTE: &str = "hypotheses certified numerically: sampled \
definition plus grid shape classification; a pass is evidence, a failure carries \
a counterexample";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub quad_tol: f64,
    pub slack_tol: f64,
    pub certify: CertifyOptions,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            quad_tol: DEFAULT_QUAD_TOL,
            slack_tol: DEFAULT_SLACK_TOL,
            certify: CertifyOptions::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryStatus {
    Satisfied,
    Violated,
    HypothesisNotCertified,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hypotheses {
    pub h1: Certificate,
    pub hp: Certificate,
    pub hq: Certificate,
}

impl Hypotheses {
    pub fn get(&self, h: Hypothesis) -> &Certificate {
        match h {
            Hypothesis::H1 => &self.h1,
            Hypothesis::Hp => &self.hp,
            Hypothesis::Hq => &self.hq,
        }
    }

    pub fn all_certified(&self) -> bool {
        self.h1.certified && self.hp.certified && self.hq.certified
    }
}

/// Everything needed to rerun a failing instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Reproduction {
    pub function: String,
    pub interval: Interval,
    pub x: f64,
    pub params: ExponentParams,
    pub theorem: TheoremId,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub function: String,
    pub interval: Interval,
    pub x: f64,
    pub params: ExponentParams,
    /// Endpoint-weighted deviation at `x`, the left side of thm6–thm8.
    pub lhs: f64,
    /// `|(f(a)+f(b))/2 - mean|`, the left side of the baselines.
    pub trapezoid_lhs: f64,
    pub bounds: BTreeMap<TheoremId, f64>,
    pub slacks: BTreeMap<TheoremId, f64>,
    pub satisfied: BTreeMap<TheoremId, bool>,
    pub status: BTreeMap<TheoremId, EntryStatus>,
    pub hypotheses: Hypotheses,
    pub lemma1_residual: f64,
    /// Error bound on `lhs` from the mean integral.
    pub quadrature_error: f64,
    pub lemma1_quadrature_error: f64,
    pub slack_tolerance: f64,
    pub notes: Vec<String>,
}

impl BoundReport {
    /// Entries whose hypothesis is certified and whose slack is below tolerance.
    pub fn violations(&self) -> Vec<Reproduction> {
        self.status
            .iter()
            .filter(|(_, s)| **s == EntryStatus::Violated)
            .map(|(&id, _)| Reproduction {
                function: self.function.clone(),
                interval: self.interval,
                x: self.x,
                params: self.params,
                theorem: id,
                lhs: if id.is_baseline() { self.trapezoid_lhs } else { self.lhs },
                rhs: self.bounds[&id],
                slack: self.slacks[&id],
                seed: None,
            })
            .collect()
    }

    pub fn any_uncertified(&self) -> bool {
        self.status.values().any(|s| *s == EntryStatus::HypothesisNotCertified)
    }

    /// Turn a violation on a certified input into a hard error.
    pub fn ensure_no_violation(&self) -> Result<()> {
        match self.violations().into_iter().next() {
            Some(r) => Err(Error::BoundViolation(Box::new(r))),
            None => Ok(()),
        }
    }
}

pub fn certify_all<F: RealFunction + ?Sized>(
    f: &F,
    iv: Interval,
    params: &ExponentParams,
    opts: &CertifyOptions,
) -> Result<Hypotheses> {
    Ok(Hypotheses {
        h1: certify_derivative_power(f, iv, 1.0, opts)?,
        hp: certify_derivative_power(f, iv, params.holder_conjugate(), opts)?,
        hq: certify_derivative_power(f, iv, params.q(), opts)?,
    })
}

/// Verify every inequality for `f` at `x` with default tolerances except the
/// quadrature tolerance `tol`.
pub fn verify<F: RealFunction + ?Sized>(
    f: &F,
    iv: Interval,
    x: f64,
    params: ExponentParams,
    tol: f64,
) -> Result<BoundReport> {
    let opts = VerifyOptions {
        quad_tol: tol,
        ..VerifyOptions::default()
    };
    verify_with(f, iv, x, params, &opts)
}

pub fn verify_with<F: RealFunction + ?Sized>(
    f: &F,
    iv: Interval,
    x: f64,
    params: ExponentParams,
    opts: &VerifyOptions,
) -> Result<BoundReport> {
    ensure_in_interval(iv, x)?;
    let hypotheses = certify_all(f, iv, &params, &opts.certify)?;

    let w = iv.width();
    let mean = integral(f, iv, opts.quad_tol)?;
    let quadrature_error = mean.error_estimate / w;
    let lhs = signed_weighted_deviation(f, iv, x, mean.value / w)?.abs();
    let trapezoid_lhs = signed_weighted_deviation(f, iv, iv.midpoint(), mean.value / w)?.abs();
    let lemma = lemma1_terms(f, iv, x, opts.quad_tol)?;

    let d = DerivativeMagnitudes::of(f, iv)?;
    let at_x = abs_derivative_at(f, x)?;
    let mut bounds = BTreeMap::new();
    let mut slacks = BTreeMap::new();
    let mut satisfied = BTreeMap::new();
    let mut status = BTreeMap::new();
    for id in TheoremId::ALL {
        let rhs = weighted_from(iv, x, id, &d, at_x, &params)?;
        let side = if id.is_baseline() { trapezoid_lhs } else { lhs };
        let slack = rhs - side;
        let ok = slack >= -(opts.slack_tol + quadrature_error);
        let st = if !hypotheses.get(id.hypothesis()).certified {
            EntryStatus::HypothesisNotCertified
        } else if ok {
            EntryStatus::Satisfied
        } else {
            EntryStatus::Violated
        };
        bounds.insert(id, rhs);
        slacks.insert(id, slack);
        satisfied.insert(id, ok);
        status.insert(id, st);
    }

    Ok(BoundReport {
        function: f.label(),
        interval: iv,
        x,
        params,
        lhs,
        trapezoid_lhs,
        bounds,
        slacks,
        satisfied,
        status,
        hypotheses,
        lemma1_residual: lemma.residual,
        quadrature_error,
        lemma1_quadrature_error: lemma.quadrature_error,
        slack_tolerance: opts.slack_tol,
        notes: vec![LEMMA1_NOTE.to_string(), CERTIFICATION_NOTE.to_string()],
    })
}

/// One weighted bound at the midpoint against the baseline it reduces to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReductionPair {
    pub theorem: TheoremId,
    pub baseline: TheoremId,
    pub theorem_value: f64,
    pub baseline_value: f64,
    pub relative_difference: f64,
    pub pass: bool,
}

pub fn relative_difference(u: f64, v: f64) -> f64 {
    if u == v {
        return 0.0;
    }
    (u - v).abs() / u.abs().max(v.abs())
}

/// Check that thm6/thm7/thm8 at `x = (a+b)/2` coincide with eq1/eq2/eq3 to
/// relative tolerance `tol`. Pure arithmetic; no quadrature.
pub fn reduction_check<F: RealFunction + ?Sized>(
    f: &F,
    iv: Interval,
    params: ExponentParams,
    tol: f64,
) -> Result<Vec<ReductionPair>> {
    let d = DerivativeMagnitudes::of(f, iv)?;
    let mid = iv.midpoint();
    let at_mid = abs_derivative_at(f, mid)?;
    TheoremId::WEIGHTED
        .into_iter()
        .map(|id| {
            let baseline = id.midpoint_reduction().expect("weighted ids reduce");
            let theorem_value = weighted_from(iv, mid, id, &d, at_mid, &params)?;
            let baseline_value = weighted_from(iv, mid, baseline, &d, at_mid, &params)?;
            let rel = relative_difference(theorem_value, baseline_value);
            Ok(ReductionPair {
                theorem: id,
                baseline,
                theorem_value,
                baseline_value,
                relative_difference: rel,
                pass: rel <= tol,
            })
        })
        .collect()
}

/// The classical chain `f((a+b)/2) <= mean <= (f(a)+f(b))/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassicHh {
    pub midpoint_value: f64,
    pub mean_integral: f64,
    pub endpoint_mean: f64,
    pub holds: bool,
}

pub fn classic_hh_check<F: RealFunction + ?Sized>(f: &F, iv: Interval, tol: f64) -> Result<ClassicHh> {
    let q = integral(f, iv, tol)?;
    let mean = q.value / iv.width();
    let slack = tol + q.error_estimate / iv.width();
    let midpoint_value = f.value(iv.midpoint())?;
    let endpoint_mean = (f.value(iv.a())? + f.value(iv.b())?) / 2.0;
    Ok(ClassicHh {
        midpoint_value,
        mean_integral: mean,
        endpoint_mean,
        holds: midpoint_value <= mean + slack && mean <= endpoint_mean + slack,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exprlang::parse;

    fn iv(a: f64, b: f64) -> Interval {
        Interval::new(a, b).unwrap()
    }

    #[test]
    fn square_at_midpoint() {
        let f = parse("x^2").unwrap();
        let r = verify(&f, iv(0.0, 1.0), 0.5, ExponentParams::new(2.0, 2.0).unwrap(), 1e-10).unwrap();
        assert!((r.lhs - 1.0 / 6.0).abs() < 1e-12);
        assert!((r.bounds[&TheoremId::Thm6] - 0.375).abs() < 1e-15);
        assert!((r.slacks[&TheoremId::Thm6] - 5.0 / 24.0).abs() < 1e-12);
        assert_eq!(r.status[&TheoremId::Thm6], EntryStatus::Satisfied);
        assert!(r.violations().is_empty());
        assert!(r.ensure_no_violation().is_ok());
        for id in TheoremId::ALL {
            assert_eq!(r.slacks[&id], r.bounds[&id] - if id.is_baseline() { r.trapezoid_lhs } else { r.lhs });
        }
    }

    #[test]
    fn identity_is_tight_at_left_endpoint() {
        let f = parse("x").unwrap();
        let r = verify(&f, iv(0.0, 1.0), 0.0, ExponentParams::default(), 1e-10).unwrap();
        assert!(r.slacks[&TheoremId::Thm6].abs() < 1e-12);
        assert!(r.satisfied[&TheoremId::Thm6]);
    }

    #[test]
    fn concave_foil_keeps_certified_bound() {
        let f = parse("-x^2").unwrap();
        let r = verify(&f, iv(-1.0, 1.0), 0.25, ExponentParams::default(), 1e-10).unwrap();
        assert!(r.hypotheses.h1.certified);
        assert_eq!(r.status[&TheoremId::Thm6], EntryStatus::Satisfied);
        assert!(!classic_hh_check(&f, iv(-1.0, 1.0), 1e-10).unwrap().holds);
    }

    #[test]
    fn oscillating_foil_is_not_certified() {
        let f = parse("sin(10*x)").unwrap();
        let r = verify(&f, iv(0.0, 1.0), 0.5, ExponentParams::default(), 1e-10).unwrap();
        assert!(!r.hypotheses.h1.certified);
        assert!(r.hypotheses.h1.verdict.counterexample.is_some());
        assert!(r.any_uncertified());
        for id in TheoremId::ALL {
            assert_eq!(r.status[&id], EntryStatus::HypothesisNotCertified);
        }
    }

    #[test]
    fn classic_examples() {
        let sq = classic_hh_check(&parse("x^2").unwrap(), iv(0.0, 1.0), 1e-10).unwrap();
        assert_eq!(sq.midpoint_value, 0.25);
        assert!((sq.mean_integral - 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(sq.endpoint_mean, 0.5);
        assert!(sq.holds);
        let lin = classic_hh_check(&parse("x").unwrap(), iv(0.0, 1.0), 1e-10).unwrap();
        assert_eq!(lin.midpoint_value, 0.5);
        assert!((lin.mean_integral - 0.5).abs() < 1e-15);
        assert!(lin.holds);
        assert!(!classic_hh_check(&parse("-x^2").unwrap(), iv(0.0, 1.0), 1e-10).unwrap().holds);
    }

    #[test]
    fn reductions() {
        let sq = parse("x^2").unwrap();
        let pairs = reduction_check(&sq, iv(0.0, 1.0), ExponentParams::new(2.0, 2.0).unwrap(), 1e-12).unwrap();
        let values: Vec<f64> = pairs.iter().map(|p| p.theorem_value).collect();
        assert!((values[0] - 0.375).abs() < 1e-15);
        assert!((values[1] - 3f64.sqrt() / 4.0).abs() < 1e-15);
        assert!((values[2] - 0.375).abs() < 1e-15);
        assert!(pairs.iter().all(|p| p.pass));

        let c = parse("1.25").unwrap();
        for p in reduction_check(&c, iv(-2.0, 5.0), ExponentParams::default(), 1e-12).unwrap() {
            assert_eq!((p.theorem_value, p.baseline_value), (0.0, 0.0));
            assert!(p.pass);
        }

        let e = parse("exp(x)").unwrap();
        let pairs = reduction_check(&e, iv(0.0, 2.0), ExponentParams::new(3.0, 1.5).unwrap(), 1e-12).unwrap();
        assert!(pairs.iter().all(|p| p.pass), "{pairs:?}");
    }
}
