//! Command-line front end.
//!
//! ```text
//! hhquasi verify   --f "x^2" --a 0 --b 1 [--x 0.5] [--p 2] [--q 2] [--tol 1e-10]
//! hhquasi sweep    --f catalog:exp [--n 101] [--format csv]
//! hhquasi optimize --f "exp(x)" --a 0 --b 1 [--theorem thm6]
//! hhquasi fuzz     [--trials 1000] [--seed 42] [--family monotone-exp ...]
//! hhquasi reduce   --f "exp(x)" --a 0 --b 2 --p 3 --q 1.5
//! hhquasi catalog
//! ```
//!
//! Exit status: 0 when every checked inequality holds, 1 on usage, parse or
//! domain errors, 2 when a hypothesis could not be certified, 3 on a bound
//! violation (the reproduction JSON goes to the diagnostic stream).
//!
//! JSON reports share a stable schema. `verify` emits
//! `{command, function, interval:{a,b}, x, params:{p,q}, lhs, trapezoid_lhs,
//! bounds:{ion1..thm8}, slacks:{..}, satisfied:{..}, status:{..},
//! hypotheses:{h1,hp,hq}, lemma1_residual, quadrature_error,
//! lemma1_quadrature_error, slack_tolerance, notes, classic_hh, tool_version}`.
//! Floats are written with 17 significant digits; CSV uses the shortest
//! round-trip form.

mod json;
mod render;

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{fuzz, optimal_x, sweep_x_with, FuzzConfig};
use crate::error::{Error, Result};
use crate::exprlang::{parse, DomainError, Expression, RealFunction};
use crate::hhbounds::{
    classic_hh_check, reduction_check, verify_with, ExponentParams, TheoremId, VerifyOptions,
    DEFAULT_REDUCTION_TOL,
};
use crate::numerics::Interval;
use crate::quasiconvexity::{lookup, CatalogEntry, Family};

pub use json::{to_json, FixedFloatFormatter};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NOT_CERTIFIED: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "hhquasi",
    version,
    about = "Check endpoint-weighted Hermite-Hadamard bounds for functions with quasi-convex |f'|"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate every bound at one point x and certify the hypotheses.
    Verify(VerifyArgs),
    /// Tabulate lhs and the weighted bounds over a grid of x.
    Sweep(SweepArgs),
    /// Find the x that minimizes one weighted bound (exploratory).
    Optimize(OptimizeArgs),
    /// Seeded campaign over generated functions.
    Fuzz(FuzzArgs),
    /// List the built-in functions.
    Catalog(OutputArgs),
    /// Compare the weighted bounds at the midpoint with the baselines they reduce to.
    Reduce(ReduceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct FunctionArgs {
    /// Expression in x, or `catalog:<name>`.
    #[arg(long = "f", allow_hyphen_values = true)]
    pub f: String,
    /// Left endpoint (defaults to the catalog interval).
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    /// Right endpoint (defaults to the catalog interval).
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct ExponentArgs {
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    #[arg(long, default_value_t = 2.0)]
    pub q: f64,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub function: FunctionArgs,
    /// Evaluation point (defaults to the midpoint).
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<f64>,
    #[command(flatten)]
    pub exponents: ExponentArgs,
    /// Quadrature tolerance.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub function: FunctionArgs,
    /// Number of grid points, including both endpoints.
    #[arg(long, default_value_t = 101)]
    pub n: usize,
    #[command(flatten)]
    pub exponents: ExponentArgs,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct OptimizeArgs {
    #[command(flatten)]
    pub function: FunctionArgs,
    /// One of thm6, thm7, thm8.
    #[arg(long, default_value = "thm6")]
    pub theorem: TheoremId,
    #[command(flatten)]
    pub exponents: ExponentArgs,
    /// Minimizer tolerance in x.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct FuzzArgs {
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Generator families, used round-robin (default: all).
    #[arg(long, value_delimiter = ',')]
    pub family: Vec<Family>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub a: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub b: f64,
    /// Quadrature tolerance.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ReduceArgs {
    #[command(flatten)]
    pub function: FunctionArgs,
    #[command(flatten)]
    pub exponents: ExponentArgs,
    /// Relative tolerance for each pair.
    #[arg(long, default_value_t = DEFAULT_REDUCTION_TOL)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// A parsed `--f` argument: an expression labelled by its canonical text or
/// by its catalog id.
#[derive(Debug, Clone)]
pub struct FunctionSource {
    pub expression: Expression,
    pub label: String,
    pub catalog: Option<&'static CatalogEntry>,
}

impl FunctionSource {
    pub fn resolve(text: &str) -> Result<Self> {
        if text.starts_with("catalog:") {
            let entry = lookup(text)?;
            return Ok(Self {
                expression: entry.expression(),
                label: entry.id(),
                catalog: Some(entry),
            });
        }
        let expression = parse(text)?;
        Ok(Self {
            label: expression.canonical(),
            expression,
            catalog: None,
        })
    }

    fn interval(&self, a: Option<f64>, b: Option<f64>) -> Result<Interval> {
        let (da, db) = match self.catalog {
            Some(e) => (Some(e.a), Some(e.b)),
            None => (None, None),
        };
        match (a.or(da), b.or(db)) {
            (Some(a), Some(b)) => Interval::new(a, b),
            _ => Err(Error::Parameter(
                "--a and --b are required unless --f names a catalog entry".into(),
            )),
        }
    }
}

impl RealFunction for FunctionSource {
    fn value(&self, x: f64) -> std::result::Result<f64, DomainError> {
        self.expression.value(x)
    }

    fn derivative(&self, x: f64) -> std::result::Result<f64, DomainError> {
        self.expression.derivative(x)
    }

    fn label(&self) -> String {
        self.label.clone()
    }
}

fn resolve_function(args: &FunctionArgs) -> Result<(FunctionSource, Interval)> {
    let f = FunctionSource::resolve(&args.f)?;
    let iv = f.interval(args.a, args.b)?;
    Ok((f, iv))
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(Error::Parameter(format!("--tol must be positive and finite (got {tol})")))
    }
}

fn params(args: &ExponentArgs) -> Result<ExponentParams> {
    ExponentParams::new(args.p, args.q)
}

/// A finished command: the report text plus the exit status it implies.
struct Outcome {
    report: String,
    status: i32,
    diagnostics: Vec<String>,
}

impl Outcome {
    fn ok(report: String) -> Self {
        Self {
            report,
            status: EXIT_OK,
            diagnostics: Vec::new(),
        }
    }
}

fn json(value: &impl serde::Serialize) -> Result<String> {
    to_json(value).map_err(|e| Error::Parameter(format!("serialization failed: {e}")))
}

/// Parse `argv` (including the program name), run the command, write the
/// report to `out` (or `--output`) and diagnostics to `err`. Returns the exit
/// status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };

    let output_path = cli.command.output().output.clone();
    let outcome = match execute(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return match e {
                Error::BoundViolation(r) => {
                    if let Ok(j) = json(&r) {
                        let _ = err.write_all(j.as_bytes());
                    }
                    EXIT_VIOLATION
                }
                _ => EXIT_USAGE,
            };
        }
    };

    let written = match &output_path {
        Some(path) => fs::write(path, outcome.report.as_bytes()),
        None => out.write_all(outcome.report.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write report: {e}");
        return EXIT_USAGE;
    }
    for line in &outcome.diagnostics {
        let _ = writeln!(err, "{line}");
    }
    outcome.status
}

impl Command {
    fn output(&self) -> &OutputArgs {
        match self {
            Command::Verify(a) => &a.output,
            Command::Sweep(a) => &a.output,
            Command::Optimize(a) => &a.output,
            Command::Fuzz(a) => &a.output,
            Command::Catalog(a) => a,
            Command::Reduce(a) => &a.output,
        }
    }
}

fn execute(command: &Command) -> Result<Outcome> {
    match command {
        Command::Verify(args) => run_verify(args),
        Command::Sweep(args) => run_sweep(args),
        Command::Optimize(args) => run_optimize(args),
        Command::Fuzz(args) => run_fuzz(args),
        Command::Catalog(args) => run_catalog(args),
        Command::Reduce(args) => run_reduce(args),
    }
}

fn run_verify(args: &VerifyArgs) -> Result<Outcome> {
    let (f, iv) = resolve_function(&args.function)?;
    let params = params(&args.exponents)?;
    check_tol(args.tol)?;
    let x = args.x.unwrap_or_else(|| iv.midpoint());
    if !iv.contains(x) {
        return Err(Error::Parameter(format!(
            "x = {x} lies outside [{}, {}]",
            iv.a(),
            iv.b()
        )));
    }
    let opts = VerifyOptions {
        quad_tol: args.tol,
        ..VerifyOptions::default()
    };
    let report = verify_with(&f, iv, x, params, &opts)?;
    let classic = classic_hh_check(&f, iv, args.tol)?;

    let text = match args.output.format {
        Format::Json => json(&render::VerifyJson {
            command: "verify",
            report: &report,
            classic_hh: &classic,
            tool_version: TOOL_VERSION,
        })?,
        Format::Csv => render::verify_csv(&report),
        Format::Text => render::verify_text(&report, &classic),
    };

    let mut outcome = Outcome::ok(text);
    let violations = report.violations();
    if let Some(first) = violations.first() {
        outcome.status = EXIT_VIOLATION;
        for v in &violations {
            outcome.diagnostics.push(format!("bound violation ({})", v.theorem));
        }
        outcome.diagnostics.push(json(first)?.trim_end().to_string());
    } else if report.any_uncertified() {
        outcome.status = EXIT_NOT_CERTIFIED;
        for (id, s) in &report.status {
            if *s == crate::hhbounds::EntryStatus::HypothesisNotCertified {
                outcome.diagnostics.push(format!("{id}: hypothesis not certified"));
            }
        }
    }
    Ok(outcome)
}

fn run_sweep(args: &SweepArgs) -> Result<Outcome> {
    let (f, iv) = resolve_function(&args.function)?;
    let params = params(&args.exponents)?;
    check_tol(args.tol)?;
    if args.n < 2 {
        return Err(Error::Parameter(format!("--n must be at least 2 (got {})", args.n)));
    }
    let opts = VerifyOptions {
        quad_tol: args.tol,
        ..VerifyOptions::default()
    };
    let table = sweep_x_with(&f, iv, args.n, params, &opts)?;
    let text = match args.output.format {
        Format::Json => json(&render::SweepJson {
            command: "sweep",
            table: &table,
            min_slacks: table.min_slacks().into(),
            tool_version: TOOL_VERSION,
        })?,
        Format::Csv => table.to_csv(),
        Format::Text => render::sweep_text(&table),
    };
    let mut outcome = Outcome::ok(text);
    let bad = table.violating_rows();
    if let Some(row) = bad.first() {
        outcome.status = EXIT_VIOLATION;
        outcome.diagnostics.push(format!(
            "{} row(s) violate a certified bound; first at x = {}",
            bad.len(),
            row.x
        ));
        outcome.diagnostics.push(json(row)?.trim_end().to_string());
    } else if !table.hypotheses.all_certified() {
        outcome.status = EXIT_NOT_CERTIFIED;
        outcome
            .diagnostics
            .push("at least one hypothesis is not certified".to_string());
    }
    Ok(outcome)
}

fn run_optimize(args: &OptimizeArgs) -> Result<Outcome> {
    let (f, iv) = resolve_function(&args.function)?;
    let params = params(&args.exponents)?;
    check_tol(args.tol)?;
    let r = optimal_x(&f, iv, args.theorem, params, args.tol)?;
    let text = match args.output.format {
        Format::Json => json(&render::Tagged {
            command: "optimize",
            body: &r,
            tool_version: TOOL_VERSION,
        })?,
        Format::Csv => render::optimize_csv(&r),
        Format::Text => render::optimize_text(&r),
    };
    Ok(Outcome::ok(text))
}

fn run_fuzz(args: &FuzzArgs) -> Result<Outcome> {
    check_tol(args.tol)?;
    let config = FuzzConfig {
        seed: args.seed,
        families: if args.family.is_empty() {
            Family::ALL.to_vec()
        } else {
            args.family.clone()
        },
        interval: Interval::new(args.a, args.b)?,
        trials: args.trials,
        quad_tol: args.tol,
        ..FuzzConfig::default()
    };
    let summary = fuzz(&config)?;
    let text = match args.output.format {
        Format::Json => json(&render::Tagged {
            command: "fuzz",
            body: &summary,
            tool_version: TOOL_VERSION,
        })?,
        Format::Csv => render::fuzz_csv(&summary),
        Format::Text => render::fuzz_text(&summary),
    };
    let mut outcome = Outcome::ok(text);
    if summary.errors > 0 {
        outcome
            .diagnostics
            .push(format!("{} trial(s) failed with errors", summary.errors));
    }
    if let Some(first) = summary.violation_details.first() {
        outcome.status = EXIT_VIOLATION;
        outcome
            .diagnostics
            .push(format!("{} bound violation(s)", summary.violations));
        outcome.diagnostics.push(json(first)?.trim_end().to_string());
    } else if summary.certification_failures > 0 {
        outcome.status = EXIT_NOT_CERTIFIED;
        outcome.diagnostics.push(format!(
            "{} trial(s) with an uncertified hypothesis",
            summary.certification_failures
        ));
    }
    Ok(outcome)
}

fn run_catalog(args: &OutputArgs) -> Result<Outcome> {
    let text = match args.format {
        Format::Json => json(&render::catalog_json())?,
        Format::Csv => render::catalog_csv(),
        Format::Text => render::catalog_text(),
    };
    Ok(Outcome::ok(text))
}

fn run_reduce(args: &ReduceArgs) -> Result<Outcome> {
    let (f, iv) = resolve_function(&args.function)?;
    let params = params(&args.exponents)?;
    check_tol(args.tol)?;
    let pairs = reduction_check(&f, iv, params, args.tol)?;
    let all_pass = pairs.iter().all(|p| p.pass);
    let text = match args.output.format {
        Format::Json => json(&render::ReduceJson {
            command: "reduce",
            function: f.label(),
            interval: iv,
            params,
            tolerance: args.tol,
            pairs: &pairs,
            all_pass,
            tool_version: TOOL_VERSION,
        })?,
        Format::Csv => render::reduce_csv(&pairs),
        Format::Text => render::reduce_text(&f.label(), iv, &pairs),
    };
    let mut outcome = Outcome::ok(text);
    if !all_pass {
        outcome.status = EXIT_VIOLATION;
        for p in pairs.iter().filter(|p| !p.pass) {
            outcome.diagnostics.push(format!(
                "{} vs {}: relative difference {:e}",
                p.theorem, p.baseline, p.relative_difference
            ));
        }
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("hhquasi").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn catalog_source_uses_catalog_interval() {
        let f = FunctionSource::resolve("catalog:sqrtabs").unwrap();
        let iv = f.interval(None, None).unwrap();
        assert_eq!((iv.a(), iv.b()), (0.25, 4.0));
        assert_eq!(f.label(), "catalog:sqrtabs");
        assert_eq!(f.interval(Some(1.0), None).unwrap().a(), 1.0);
    }

    #[test]
    fn expression_needs_endpoints() {
        let f = FunctionSource::resolve("x").unwrap();
        assert!(f.interval(Some(0.0), None).is_err());
    }

    #[test]
    fn negative_endpoints_accepted() {
        let (code, out, _) = call(&["verify", "--f", "x^2", "--a", "-1", "--b", "1"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"command\": \"verify\""));
    }

    #[test]
    fn bad_flag_is_usage_error() {
        let (code, out, err) = call(&["verify", "--nope"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(out.is_empty());
        assert!(!err.is_empty());
    }

    #[test]
    fn x_outside_interval_fails_fast() {
        let (code, out, err) = call(&["verify", "--f", "x", "--a", "0", "--b", "1", "--x", "2"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(out.is_empty());
        assert!(err.contains("outside"));
    }
}
