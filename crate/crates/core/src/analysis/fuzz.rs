//! Seeded fuzz campaigns: generate functions whose `|f'|` is quasi-convex by
//! construction, certify the hypotheses, verify every weighted bound at a
//! per-trial `x`, and aggregate.
//!
//! Trial `i` derives all of its randomness from `splitmix64(seed ^ i)`, so the
//! summary does not depend on how trials are scheduled across threads.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exprlang::RealFunction;
use crate::hhbounds::{
    integral, lemma1_terms, signed_weighted_deviation, thm6_from, thm7_from, thm8_from,
    DerivativeMagnitudes, ExponentParams, Reproduction, TheoremId, DEFAULT_QUAD_TOL,
    DEFAULT_SLACK_TOL,
};
use crate::numerics::Interval;
use crate::quasiconvexity::{
    certify_derivative_power, generate, CertifyOptions, Family, GeneratedFunction,
    GeneratorConfig,
};

pub const HISTOGRAM_BUCKETS: usize = 20;

/// Violation details kept verbatim in the summary; the count is always exact.
const MAX_REPORTED_DETAILS: usize = 50;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub seed: u64,
    /// Trial `i` uses `families[i % families.len()]`.
    pub families: Vec<Family>,
    pub interval: Interval,
    pub scale: (f64, f64),
    pub trials: usize,
    pub p_grid: Vec<f64>,
    pub q_grid: Vec<f64>,
    pub quad_tol: f64,
    pub slack_tol: f64,
    #[serde(skip)]
    pub certify: CertifyOptions,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            families: Family::ALL.to_vec(),
            interval: Interval::new(0.0, 1.0).expect("unit interval"),
            scale: (0.5, 3.0),
            trials: 1000,
            p_grid: vec![1.5, 2.0, 3.0, 10.0],
            q_grid: vec![1.0, 1.5, 2.0, 5.0],
            quad_tol: DEFAULT_QUAD_TOL,
            slack_tol: DEFAULT_SLACK_TOL,
            certify: CertifyOptions::default(),
        }
    }
}

impl FuzzConfig {
    /// Campaign over a single generator configuration.
    pub fn from_generator(config: &GeneratorConfig, trials: usize) -> Self {
        Self {
            seed: config.seed,
            families: vec![config.family],
            interval: config.interval,
            scale: config.scale,
            trials,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Parameter("fuzz needs at least one trial".into()));
        }
        if self.families.is_empty() {
            return Err(Error::Parameter("fuzz needs at least one family".into()));
        }
        for &p in &self.p_grid {
            ExponentParams::new(p, 1.0)?;
        }
        for &q in &self.q_grid {
            ExponentParams::new(2.0, q)?;
        }
        self.generator(0).validate()
    }

    fn generator(&self, index: usize) -> GeneratorConfig {
        GeneratorConfig {
            seed: trial_seed(self.seed, index),
            family: self.families[index % self.families.len()],
            interval: self.interval,
            scale: self.scale,
        }
    }
}

/// SplitMix64 finalizer applied to `seed ^ index`.
pub fn trial_seed(seed: u64, index: usize) -> u64 {
    let mut z = (seed ^ index as u64).wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// One bound evaluated in one trial.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialEntry {
    pub theorem: TheoremId,
    /// `p` for thm7, `q` for thm8, 1 for thm6.
    pub exponent: f64,
    pub certified: bool,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub index: usize,
    pub function: GeneratedFunction,
    pub x: f64,
    pub quadrature_error: f64,
    pub lemma1_residual: f64,
    pub certification_failures: Vec<String>,
    pub entries: Vec<TrialEntry>,
    pub violations: Vec<Reproduction>,
}

/// Run trial `index` of the campaign in isolation.
pub fn run_trial(config: &FuzzConfig, index: usize) -> Result<TrialOutcome> {
    let gen_config = config.generator(index);
    let f = generate(&gen_config)?;
    let iv = config.interval;

    let mut rng = ChaCha8Rng::seed_from_u64(gen_config.seed);
    rng.set_stream(1);
    let x = rng.gen_range(iv.a()..=iv.b());

    let mut failures = Vec::new();
    let mut certified = |exponent: f64, what: String| -> Result<bool> {
        let c = certify_derivative_power(&f, iv, exponent, &config.certify)?;
        if !c.certified {
            failures.push(format!("{what} (margin {:e}, shape {:?})", c.verdict.margin, c.shape));
        }
        Ok(c.certified)
    };
    let h1 = certified(1.0, "|f'|".into())?;
    let hp = config
        .p_grid
        .iter()
        .map(|&p| certified(p / (p - 1.0), format!("|f'|^(p/(p-1)) with p = {p}")))
        .collect::<Result<Vec<_>>>()?;
    let hq = config
        .q_grid
        .iter()
        .map(|&q| certified(q, format!("|f'|^q with q = {q}")))
        .collect::<Result<Vec<_>>>()?;

    let q = integral(&f, iv, config.quad_tol)?;
    let quadrature_error = q.error_estimate / iv.width();
    let lhs = signed_weighted_deviation(&f, iv, x, q.value / iv.width())?.abs();
    let lemma = lemma1_terms(&f, iv, x, config.quad_tol)?;
    let d = DerivativeMagnitudes::of(&f, iv)?;
    let at_x = f.derivative(x)?.abs();

    let mut entries = vec![TrialEntry {
        theorem: TheoremId::Thm6,
        exponent: 1.0,
        certified: h1,
        lhs,
        rhs: thm6_from(iv, x, &d, at_x),
        slack: 0.0,
    }];
    for (&p, &ok) in config.p_grid.iter().zip(&hp) {
        entries.push(TrialEntry {
            theorem: TheoremId::Thm7,
            exponent: p,
            certified: ok,
            lhs,
            rhs: thm7_from(iv, x, &d, at_x, p),
            slack: 0.0,
        });
    }
    for (&qq, &ok) in config.q_grid.iter().zip(&hq) {
        entries.push(TrialEntry {
            theorem: TheoremId::Thm8,
            exponent: qq,
            certified: ok,
            lhs,
            rhs: thm8_from(iv, x, &d, at_x, qq),
            slack: 0.0,
        });
    }
    for e in &mut entries {
        e.slack = e.rhs - e.lhs;
    }

    let floor = -(quadrature_error + config.slack_tol);
    let violations = entries
        .iter()
        .filter(|e| e.certified && e.slack < floor)
        .map(|e| {
            let (p, qq) = match e.theorem {
                TheoremId::Thm7 => (e.exponent, 1.0),
                TheoremId::Thm8 => (2.0, e.exponent),
                _ => (2.0, 1.0),
            };
            Reproduction {
                function: f.source(),
                interval: iv,
                x,
                params: ExponentParams::new(p, qq).expect("validated grid"),
                theorem: e.theorem,
                lhs: e.lhs,
                rhs: e.rhs,
                slack: e.slack,
                seed: Some(gen_config.seed),
            }
        })
        .collect();

    Ok(TrialOutcome {
        index,
        function: f,
        x,
        quadrature_error,
        lemma1_residual: lemma.residual,
        certification_failures: failures,
        entries,
        violations,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzSummary {
    pub seed: u64,
    pub trials: usize,
    pub families: Vec<Family>,
    pub interval: Interval,
    pub p_grid: Vec<f64>,
    pub q_grid: Vec<f64>,
    pub quad_tol: f64,
    pub slack_tol: f64,
    pub violations: usize,
    pub violation_details: Vec<Reproduction>,
    pub certification_failures: usize,
    pub certification_details: Vec<String>,
    pub errors: usize,
    pub error_details: Vec<String>,
    pub min_slack: BTreeMap<TheoremId, f64>,
    /// Counts of `lhs/rhs` over 20 uniform buckets of `[0, 1]`; ratios above 1
    /// land in the last bucket.
    pub ratio_histogram: Vec<u64>,
    /// Entries with `rhs = 0 < lhs`, left out of the histogram.
    pub degenerate_ratios: usize,
    pub max_lemma1_residual: f64,
}

/// Histogram bucket of `lhs/rhs`, or `None` when `rhs = 0 < lhs`.
pub fn ratio_bucket(lhs: f64, rhs: f64) -> Option<usize> {
    let ratio = if rhs == 0.0 {
        if lhs == 0.0 {
            0.0
        } else {
            return None;
        }
    } else {
        lhs / rhs
    };
    Some(((ratio * HISTOGRAM_BUCKETS as f64).floor().max(0.0) as usize).min(HISTOGRAM_BUCKETS - 1))
}

pub fn fuzz(config: &FuzzConfig) -> Result<FuzzSummary> {
    config.validate()?;
    let outcomes: Vec<Result<TrialOutcome>> = (0..config.trials)
        .into_par_iter()
        .map(|i| run_trial(config, i))
        .collect();

    let mut summary = FuzzSummary {
        seed: config.seed,
        trials: config.trials,
        families: config.families.clone(),
        interval: config.interval,
        p_grid: config.p_grid.clone(),
        q_grid: config.q_grid.clone(),
        quad_tol: config.quad_tol,
        slack_tol: config.slack_tol,
        violations: 0,
        violation_details: Vec::new(),
        certification_failures: 0,
        certification_details: Vec::new(),
        errors: 0,
        error_details: Vec::new(),
        min_slack: TheoremId::WEIGHTED.into_iter().map(|t| (t, f64::INFINITY)).collect(),
        ratio_histogram: vec![0; HISTOGRAM_BUCKETS],
        degenerate_ratios: 0,
        max_lemma1_residual: 0.0,
    };

    for (i, outcome) in outcomes.into_iter().enumerate() {
        let trial = match outcome {
            Ok(t) => t,
            Err(e) => {
                summary.errors += 1;
                if summary.error_details.len() < MAX_REPORTED_DETAILS {
                    summary.error_details.push(format!("trial {i}: {e}"));
                }
                continue;
            }
        };
        if !trial.certification_failures.is_empty() {
            summary.certification_failures += 1;
            if summary.certification_details.len() < MAX_REPORTED_DETAILS {
                summary.certification_details.push(format!(
                    "trial {i} ({}): {}",
                    trial.function.id(),
                    trial.certification_failures.join("; ")
                ));
            }
        }
        summary.max_lemma1_residual = summary.max_lemma1_residual.max(trial.lemma1_residual);
        for e in &trial.entries {
            let m = summary.min_slack.get_mut(&e.theorem).expect("weighted ids");
            *m = m.min(e.slack);
            match ratio_bucket(e.lhs, e.rhs) {
                Some(b) => summary.ratio_histogram[b] += 1,
                None => summary.degenerate_ratios += 1,
            }
        }
        summary.violations += trial.violations.len();
        for v in trial.violations {
            if summary.violation_details.len() < MAX_REPORTED_DETAILS {
                summary.violation_details.push(v);
            }
        }
    }
    Ok(summary)
}
