//! Acceptance suite. Prints one `PASS`/`FAIL` line per criterion with its
//! wall time and exits non-zero if any criterion fails.
//!
//! Tolerances and time budgets are fixed here and must not be loosened to
//! make a run pass.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hhquasi::analysis::{fuzz, FuzzConfig};
use hhquasi::cli::to_json;
use hhquasi::exprlang::{derivative_value, evaluate, parse, Expression};
use hhquasi::hhbounds::{
    bound_baseline, bound_thm6, bound_thm7, bound_thm8, classic_hh_check,
    integral, lemma1_residual, lhs_weighted, reduction_check, relative_difference,
    signed_weighted_deviation, thm6_from, thm7_from, thm8_from, DerivativeMagnitudes,
    ExponentParams, TheoremId,
};
use hhquasi::numerics::Interval;
use hhquasi::quasiconvexity::{
    certify_derivative_power, check_quasiconvex, violation, CertifyOptions, CATALOG,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const QUAD_TOL: f64 = 1e-10;
const SLACK_TOL: f64 = 1e-9;
const REDUCTION_TOL: f64 = 1e-12;
const P_GRID: [f64; 4] = [1.5, 2.0, 3.0, 10.0];
const Q_GRID: [f64; 4] = [1.0, 1.5, 2.0, 5.0];

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn iv(a: f64, b: f64) -> Interval {
    Interval::new(a, b).unwrap()
}

fn corpus() -> impl Iterator<Item = (&'static str, Expression, Interval)> {
    CATALOG.iter().map(|e| (e.name, e.expression(), e.interval()))
}

/// Identity residual on every catalog function at 11 points.
fn lemma_identity() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut n = 0;
    for (name, f, i) in corpus() {
        for k in 0..11 {
            let x = i.grid_point(k, 11);
            let r = lemma1_residual(&f, i, x, QUAD_TOL).map_err(|e| format!("{name}: {e}"))?;
            ensure(r <= 1e-8, || format!("{name} at x = {x}: residual {r:e}"))?;
            worst = worst.max(r);
            n += 1;
        }
    }
    Ok(format!("{n} cases, max residual {worst:.2e}"))
}

/// Weighted bounds over the catalog, 101 points, the p and q grids.
fn inequality_suite() -> Outcome {
    let opts = CertifyOptions::default();
    let (mut checked, mut skipped) = (0usize, 0usize);
    let mut min_slack = f64::INFINITY;
    for (name, f, i) in corpus() {
        let err = |e: hhquasi::Error| format!("{name}: {e}");
        let q = integral(&f, i, QUAD_TOL).map_err(err)?;
        let mean = q.value / i.width();
        let floor = -(q.error_estimate / i.width() + SLACK_TOL);
        let d = DerivativeMagnitudes::of(&f, i).map_err(err)?;

        let h1 = certify_derivative_power(&f, i, 1.0, &opts).map_err(err)?.certified;
        let hp: Vec<bool> = P_GRID
            .iter()
            .map(|&p| certify_derivative_power(&f, i, p / (p - 1.0), &opts).map(|c| c.certified))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        let hq: Vec<bool> = Q_GRID
            .iter()
            .map(|&q| certify_derivative_power(&f, i, q, &opts).map(|c| c.certified))
            .collect::<Result<_, _>>()
            .map_err(err)?;

        for k in 0..101 {
            let x = i.grid_point(k, 101);
            let lhs = signed_weighted_deviation(&f, i, x, mean).map_err(err)?.abs();
            let at_x = derivative_value(&f, x).map_err(|e| err(e.into()))?.abs();
            let mut cases = vec![("thm6", 1.0, h1, thm6_from(i, x, &d, at_x))];
            for (&p, &ok) in P_GRID.iter().zip(&hp) {
                cases.push(("thm7", p, ok, thm7_from(i, x, &d, at_x, p)));
            }
            for (&qq, &ok) in Q_GRID.iter().zip(&hq) {
                cases.push(("thm8", qq, ok, thm8_from(i, x, &d, at_x, qq)));
            }
            for (thm, exp, certified, rhs) in cases {
                if !certified {
                    skipped += 1;
                    continue;
                }
                let slack = rhs - lhs;
                ensure(slack >= floor, || {
                    format!("{name} {thm}({exp}) at x = {x}: lhs {lhs}, rhs {rhs}, slack {slack:e}")
                })?;
                min_slack = min_slack.min(slack);
                checked += 1;
            }
        }
    }
    ensure(checked >= 7 * 101 * 9, || format!("only {checked} certified cases"))?;
    Ok(format!(
        "{checked} certified cases, {skipped} uncertified skipped, 0 violations, min slack {min_slack:.3e}"
    ))
}

/// Midpoint reductions, quadrature-free.
fn midpoint_reductions() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut n = 0;
    for (name, f, i) in corpus() {
        for &p in &P_GRID {
            for &q in &Q_GRID {
                let params = ExponentParams::new(p, q).unwrap();
                for pair in reduction_check(&f, i, params, REDUCTION_TOL).map_err(|e| e.to_string())? {
                    ensure(pair.pass, || format!("{name} p={p} q={q}: {pair:?}"))?;
                    worst = worst.max(pair.relative_difference);
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} pairs, max relative difference {worst:.1e}"))
}

/// Equality and hand-derived cases.
fn tightness_witnesses() -> Outcome {
    let unit = iv(0.0, 1.0);
    let id = parse("x").unwrap();
    for x in [0.0, 1.0] {
        let slack = bound_thm6(&id, unit, x).unwrap() - lhs_weighted(&id, unit, x, QUAD_TOL).unwrap();
        ensure(slack.abs() <= 1e-9, || format!("u at x = {x}: slack6 = {slack:e}"))?;
    }
    let mid = lhs_weighted(&id, unit, 0.5, QUAD_TOL).unwrap();
    ensure(mid.abs() <= 1e-9, || format!("u at x = 1/2: lhs = {mid:e}"))?;

    let sq = parse("x^2").unwrap();
    let params = ExponentParams::new(2.0, 2.0).unwrap();
    let r3 = 3f64.sqrt() / 4.0;
    let checks = [
        ("lhs", lhs_weighted(&sq, unit, 0.5, QUAD_TOL).unwrap(), 1.0 / 6.0),
        ("thm6", bound_thm6(&sq, unit, 0.5).unwrap(), 0.375),
        ("eq1", bound_baseline(&sq, unit, TheoremId::Eq1, &params).unwrap(), 0.375),
        ("thm7", bound_thm7(&sq, unit, 0.5, 2.0).unwrap(), r3),
        ("eq2", bound_baseline(&sq, unit, TheoremId::Eq2, &params).unwrap(), r3),
        ("thm8", bound_thm8(&sq, unit, 0.5, 2.0).unwrap(), 0.375),
        ("eq3", bound_baseline(&sq, unit, TheoremId::Eq3, &params).unwrap(), 0.375),
    ];
    for (what, got, want) in checks {
        ensure((got - want).abs() <= 1e-9, || format!("u^2 {what}: {got} vs {want}"))?;
    }
    Ok("u: slack6 = 0 at x = 0, 1 and lhs = 0 at 1/2; u^2 quadruple reproduced".into())
}

/// thm8 at q = 1 against thm6, and the p = 2 Hölder baseline for u².
fn consistency() -> Outcome {
    let mut n = 0;
    for (name, f, i) in corpus() {
        for k in 0..101 {
            let x = i.grid_point(k, 101);
            let six = bound_thm6(&f, i, x).unwrap();
            let eight = bound_thm8(&f, i, x, 1.0).unwrap();
            let rel = relative_difference(six, eight);
            ensure(rel <= 1e-15, || format!("{name} at x = {x}: {six} vs {eight}"))?;
            n += 1;
        }
    }
    let sq = parse("x^2").unwrap();
    let ion2 = bound_baseline(&sq, iv(0.0, 1.0), TheoremId::Ion2, &ExponentParams::new(2.0, 2.0).unwrap()).unwrap();
    let want = 1.0 / 3f64.sqrt();
    ensure((ion2 - want).abs() <= 1e-12, || format!("ion2 = {ion2}, want {want}"))?;
    Ok(format!("{n} thm8(q=1) = thm6 cases; ion2(p=2) = 1/sqrt(3)"))
}

/// Dual-number derivatives against central differences.
fn differentiation_oracle() -> Outcome {
    const H: f64 = 1e-6;
    // Points closer than this to a kink are skipped.
    let kinks: &[(&str, f64)] = &[("absshift", 0.3)];
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst: f64 = 0.0;
    let mut n = 0;
    for (name, f, i) in corpus() {
        let mut taken = 0;
        while taken < 100 {
            let x = rng.gen_range(i.a() + H..=i.b() - H);
            if kinks.iter().any(|&(k, at)| k == name && (x - at).abs() < 1e-3) {
                continue;
            }
            let d = derivative_value(&f, x).unwrap();
            let fd = (evaluate(&f, x + H).unwrap() - evaluate(&f, x - H).unwrap()) / (2.0 * H);
            let rel = (d - fd).abs() / d.abs().max(1.0);
            ensure(rel <= 1e-5, || format!("{name} at x = {x}: dual {d}, fd {fd}"))?;
            worst = worst.max(rel);
            taken += 1;
            n += 1;
        }
    }
    Ok(format!("{n} points, max relative gap {worst:.2e}"))
}

/// 1000 generated functions with seed 42, run twice.
fn fuzz_campaign() -> Outcome {
    let config = FuzzConfig {
        seed: 42,
        trials: 1000,
        ..FuzzConfig::default()
    };
    let first = fuzz(&config).map_err(|e| e.to_string())?;
    ensure(first.errors == 0, || format!("{} trial errors: {:?}", first.errors, first.error_details))?;
    ensure(first.violations == 0, || format!("{} violations: {:?}", first.violations, first.violation_details))?;
    ensure(first.certification_failures == 0, || {
        format!("{} certification failures: {:?}", first.certification_failures, first.certification_details)
    })?;
    let second = fuzz(&config).map_err(|e| e.to_string())?;
    let (a, b) = (to_json(&first).unwrap(), to_json(&second).unwrap());
    ensure(a == b, || "re-run differs".into())?;
    let min = first.min_slack.values().copied().fold(f64::INFINITY, f64::min);
    Ok(format!(
        "1000 trials, 0 violations, 0 certification failures, bit-identical re-run, min slack {min:.3e}"
    ))
}

/// The concave foil is rejected; the classical chain separates it from
/// affine functions.
fn foil_detection() -> Outcome {
    let i = iv(-1.0, 1.0);
    let g = |u: f64| Ok(-u * u);
    let v = check_quasiconvex(g, i, 2048, 1e-9).unwrap();
    ensure(!v.holds, || "-u^2 accepted".into())?;
    let t = v.counterexample.ok_or("no counterexample")?;
    let excess = violation(g, t).unwrap();
    let (gx, gy, gz) = (-t.x * t.x, -t.y * t.y, -t.combination().powi(2));
    ensure(excess > 1e-9 && gz > gx.max(gy), || format!("counterexample {t:?} does not verify"))?;

    let neg = parse("-x^2").unwrap();
    let chain = classic_hh_check(&neg, iv(0.0, 1.0), QUAD_TOL).unwrap();
    ensure(!chain.holds, || format!("-u^2 passed the chain: {chain:?}"))?;

    for (src, a, b) in [("x", 0.0, 1.0), ("2*x + 1", -1.0, 3.0)] {
        let f = parse(src).unwrap();
        let c = classic_hh_check(&f, iv(a, b), QUAD_TOL).unwrap();
        let spread = (c.midpoint_value - c.mean_integral)
            .abs()
            .max((c.mean_integral - c.endpoint_mean).abs());
        ensure(c.holds && spread <= 1e-9, || format!("{src}: {c:?}"))?;
    }
    Ok(format!(
        "-u^2 rejected at (x, y, lambda) = ({}, {}, {}), excess {excess:.3}; chain fails for -u^2, equality for affine",
        t.x, t.y, t.lambda
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Outcome); 8] = [
        ("1 identity residual", Duration::from_secs(10), lemma_identity),
        ("2 weighted inequality suite", Duration::from_secs(60), inequality_suite),
        ("3 midpoint reductions", Duration::from_secs(1), midpoint_reductions),
        ("4 tightness witnesses", Duration::from_secs(10), tightness_witnesses),
        ("5 consistency", Duration::from_secs(10), consistency),
        ("6 differentiation oracle", Duration::from_secs(10), differentiation_oracle),
        ("7 fuzz campaign", Duration::from_secs(120), fuzz_campaign),
        ("8 foil detection", Duration::from_secs(10), foil_detection),
    ];
    let mut failed = 0;
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let result = match result {
            Ok(detail) if took > budget => Err(format!("{detail}; took {took:.2?}, budget {budget:?}")),
            other => other,
        };
        match result {
            Ok(detail) => println!("PASS  criterion {name:<28} {took:>10.2?}  {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name:<28} {took:>10.2?}  {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
