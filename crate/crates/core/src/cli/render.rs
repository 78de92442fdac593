use std::fmt::Write as _;

use serde::Serialize;

use crate::analysis::{FuzzSummary, OptimalX, SweepTable, HISTOGRAM_BUCKETS};
use crate::hhbounds::{BoundReport, ClassicHh, ExponentParams, ReductionPair, TheoremId};
use crate::numerics::Interval;
use crate::quasiconvexity::{CatalogEntry, Certificate, ShapeClass, CATALOG};

use super::TOOL_VERSION;

#[derive(Serialize)]
pub struct Tagged<'a, T: Serialize> {
    pub command: &'static str,
    #[serde(flatten)]
    pub body: &'a T,
    pub tool_version: &'static str,
}

#[derive(Serialize)]
pub struct VerifyJson<'a> {
    pub command: &'static str,
    #[serde(flatten)]
    pub report: &'a BoundReport,
    pub classic_hh: &'a ClassicHh,
    pub tool_version: &'static str,
}

#[derive(Serialize)]
pub struct MinSlacks {
    pub slack6: f64,
    pub slack7: f64,
    pub slack8: f64,
}

impl From<(f64, f64, f64)> for MinSlacks {
    fn from((slack6, slack7, slack8): (f64, f64, f64)) -> Self {
        Self { slack6, slack7, slack8 }
    }
}

#[derive(Serialize)]
pub struct SweepJson<'a> {
    pub command: &'static str,
    #[serde(flatten)]
    pub table: &'a SweepTable,
    pub min_slacks: MinSlacks,
    pub tool_version: &'static str,
}

#[derive(Serialize)]
pub struct ReduceJson<'a> {
    pub command: &'static str,
    pub function: String,
    pub interval: Interval,
    pub params: ExponentParams,
    pub tolerance: f64,
    pub pairs: &'a [ReductionPair],
    pub all_pass: bool,
    pub tool_version: &'static str,
}

#[derive(Serialize)]
pub struct CatalogRow {
    pub id: String,
    pub kind: &'static str,
    #[serde(flatten)]
    pub entry: &'static CatalogEntry,
}

#[derive(Serialize)]
pub struct CatalogJson {
    pub command: &'static str,
    pub functions: Vec<CatalogRow>,
    pub tool_version: &'static str,
}

fn kind(e: &CatalogEntry) -> &'static str {
    if e.foil {
        "foil"
    } else {
        "regular"
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn catalog_json() -> CatalogJson {
    CatalogJson {
        command: "catalog",
        functions: CATALOG
            .iter()
            .map(|e| CatalogRow {
                id: e.id(),
                kind: kind(e),
                entry: e,
            })
            .collect(),
        tool_version: TOOL_VERSION,
    }
}

pub fn catalog_csv() -> String {
    let mut s = String::from("id,source,a,b,convex,quasiconvex,derivative_quasiconvex,foil\n");
    for e in &CATALOG {
        let _ = writeln!(
            s,
            "{},\"{}\",{},{},{},{},{},{}",
            e.id(),
            e.source,
            e.a,
            e.b,
            e.convex,
            e.quasiconvex,
            e.derivative_quasiconvex,
            e.foil
        );
    }
    s
}

pub fn catalog_text() -> String {
    let mut s = format!(
        "{:<18} {:<16} {:<14} {:>6} {:>6} {:>8}\n",
        "id", "f(x)", "[a, b]", "convex", "qc(f)", "qc(|f'|)"
    );
    for e in &CATALOG {
        let _ = writeln!(
            s,
            "{:<18} {:<16} {:<14} {:>6} {:>6} {:>8}  {}{}",
            e.id(),
            e.source,
            format!("[{}, {}]", e.a, e.b),
            yes_no(e.convex),
            yes_no(e.quasiconvex),
            yes_no(e.derivative_quasiconvex),
            if e.foil { "[FOIL] " } else { "" },
            e.note.trim_start_matches("FOIL: ")
        );
    }
    s
}

fn shape_text(shape: &ShapeClass) -> String {
    match shape {
        ShapeClass::Nondecreasing => "nondecreasing".into(),
        ShapeClass::Nonincreasing => "nonincreasing".into(),
        ShapeClass::Valley { pivot, .. } => format!("valley at {pivot:.6}"),
        ShapeClass::Other => "no monotone or valley profile".into(),
    }
}

fn certificate_text(name: &str, c: &Certificate) -> String {
    let mut s = format!(
        "  {name:<3} |f'|^{:<10} {:<14} shape: {}",
        format!("{}", c.exponent),
        if c.certified { "certified" } else { "NOT certified" },
        shape_text(&c.shape)
    );
    if let Some(t) = c.verdict.counterexample {
        let _ = write!(
            s,
            "; counterexample x = {}, y = {}, lambda = {}",
            t.x, t.y, t.lambda
        );
    }
    s
}

pub fn verify_csv(r: &BoundReport) -> String {
    let mut s = String::from("theorem,lhs,rhs,slack,satisfied,status\n");
    for id in TheoremId::ALL {
        let lhs = if id.is_baseline() { r.trapezoid_lhs } else { r.lhs };
        let status = serde_json::to_value(r.status[&id]).expect("status serializes");
        let _ = writeln!(
            s,
            "{},{},{},{},{},{}",
            id,
            lhs,
            r.bounds[&id],
            r.slacks[&id],
            r.satisfied[&id],
            status.as_str().unwrap_or_default()
        );
    }
    s
}

pub fn verify_text(r: &BoundReport, classic: &ClassicHh) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "function  {}", r.function);
    let _ = writeln!(
        s,
        "interval  [{}, {}]   x = {}   p = {}   q = {}",
        r.interval.a(),
        r.interval.b(),
        r.x,
        r.params.p(),
        r.params.q()
    );
    let _ = writeln!(s, "lhs       {:.12}  (weighted at x)", r.lhs);
    let _ = writeln!(s, "          {:.12}  (trapezoid, for the baselines)", r.trapezoid_lhs);
    let _ = writeln!(s);
    let _ = writeln!(s, "{:<6} {:>20} {:>20}  status", "bound", "rhs", "slack");
    for id in TheoremId::ALL {
        let status = serde_json::to_value(r.status[&id]).expect("status serializes");
        let _ = writeln!(
            s,
            "{:<6} {:>20.12} {:>20.12}  {}",
            id.as_str(),
            r.bounds[&id],
            r.slacks[&id],
            status.as_str().unwrap_or_default()
        );
    }
    let _ = writeln!(s);
    let _ = writeln!(s, "hypotheses");
    let _ = writeln!(s, "{}", certificate_text("h1", &r.hypotheses.h1));
    let _ = writeln!(s, "{}", certificate_text("hp", &r.hypotheses.hp));
    let _ = writeln!(s, "{}", certificate_text("hq", &r.hypotheses.hq));
    let _ = writeln!(s);
    let _ = writeln!(s, "identity residual   {:e}", r.lemma1_residual);
    let _ = writeln!(s, "quadrature error    {:e}", r.quadrature_error);
    let _ = writeln!(
        s,
        "classical chain     f(mid) = {:.12} <= mean = {:.12} <= endpoint mean = {:.12}: {}",
        classic.midpoint_value,
        classic.mean_integral,
        classic.endpoint_mean,
        if classic.holds { "holds" } else { "FAILS" }
    );
    for note in &r.notes {
        let _ = writeln!(s, "note: {note}");
    }
    s
}

pub fn sweep_text(t: &SweepTable) -> String {
    let mut s = format!(
        "{} on [{}, {}], p = {}, q = {}\n",
        t.function,
        t.interval.a(),
        t.interval.b(),
        t.params.p(),
        t.params.q()
    );
    let _ = writeln!(
        s,
        "{:>12} {:>14} {:>14} {:>14} {:>14}",
        "x", "lhs", "slack6", "slack7", "slack8"
    );
    for r in &t.rows {
        let _ = writeln!(
            s,
            "{:>12.6} {:>14.8} {:>14.8} {:>14.8} {:>14.8}",
            r.x, r.lhs, r.slack6, r.slack7, r.slack8
        );
    }
    let (s6, s7, s8) = t.min_slacks();
    let _ = writeln!(s, "min slack: thm6 {s6:e}, thm7 {s7:e}, thm8 {s8:e}");
    s
}

pub fn optimize_csv(r: &OptimalX) -> String {
    format!(
        "theorem,argmin,min_value,midpoint_value,improvement,iterations\n{},{},{},{},{},{}\n",
        r.theorem,
        r.result.argmin,
        r.result.min_value,
        r.midpoint_value,
        r.improvement,
        r.result.iterations
    )
}

pub fn optimize_text(r: &OptimalX) -> String {
    format!(
        "{} for {} on [{}, {}]\nargmin       {:.12}\nmin bound    {:.12}\nat midpoint  {:.12}\nimprovement  {:e}\nnote: {}\n",
        r.theorem,
        r.function,
        r.interval.a(),
        r.interval.b(),
        r.result.argmin,
        r.result.min_value,
        r.midpoint_value,
        r.improvement,
        r.note
    )
}

fn bucket_edges(i: usize) -> (f64, f64) {
    let w = HISTOGRAM_BUCKETS as f64;
    (i as f64 / w, (i + 1) as f64 / w)
}

pub fn fuzz_csv(f: &FuzzSummary) -> String {
    let mut s = String::from("bucket_lo,bucket_hi,count\n");
    for (i, c) in f.ratio_histogram.iter().enumerate() {
        let (lo, hi) = bucket_edges(i);
        let _ = writeln!(s, "{lo},{hi},{c}");
    }
    s
}

pub fn fuzz_text(f: &FuzzSummary) -> String {
    let families: Vec<String> = f.families.iter().map(|x| x.to_string()).collect();
    let mut s = format!(
        "trials {}  seed {}  families {}\nviolations {}  certification failures {}  errors {}\n",
        f.trials,
        f.seed,
        families.join(","),
        f.violations,
        f.certification_failures,
        f.errors
    );
    for (id, m) in &f.min_slack {
        let _ = writeln!(s, "min slack {id}: {m:e}");
    }
    let _ = writeln!(s, "max identity residual: {:e}", f.max_lemma1_residual);
    let _ = writeln!(s, "lhs/rhs histogram ({} degenerate):", f.degenerate_ratios);
    let peak = f.ratio_histogram.iter().copied().max().unwrap_or(0).max(1);
    for (i, c) in f.ratio_histogram.iter().enumerate() {
        let (lo, hi) = bucket_edges(i);
        let bar = "#".repeat((40 * c / peak) as usize);
        let _ = writeln!(s, "  [{lo:.2}, {hi:.2}) {c:>7} {bar}");
    }
    s
}

pub fn reduce_csv(pairs: &[ReductionPair]) -> String {
    let mut s = String::from("theorem,baseline,theorem_value,baseline_value,relative_difference,pass\n");
    for p in pairs {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{}",
            p.theorem, p.baseline, p.theorem_value, p.baseline_value, p.relative_difference, p.pass
        );
    }
    s
}

pub fn reduce_text(function: &str, iv: Interval, pairs: &[ReductionPair]) -> String {
    let mut s = format!("{function} on [{}, {}], x = {}\n", iv.a(), iv.b(), iv.midpoint());
    for p in pairs {
        let _ = writeln!(
            s,
            "{} = {:.15}  {} = {:.15}  rel diff {:e}  {}",
            p.theorem,
            p.theorem_value,
            p.baseline,
            p.baseline_value,
            p.relative_difference,
            if p.pass { "ok" } else { "MISMATCH" }
        );
    }
    s
}
