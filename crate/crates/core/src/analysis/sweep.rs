use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exprlang::RealFunction;
use crate::hhbounds::{
    abs_derivative_at, certify_all, integral, signed_weighted_deviation, thm6_from, thm7_from,
    thm8_from, DerivativeMagnitudes, ExponentParams, Hypotheses, VerifyOptions,
};
use crate::numerics::Interval;

pub const CSV_HEADER: &str = "x,lhs,rhs6,rhs7,rhs8,slack6,slack7,slack8";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub x: f64,
    pub lhs: f64,
    pub rhs6: f64,
    pub rhs7: f64,
    pub rhs8: f64,
    pub slack6: f64,
    pub slack7: f64,
    pub slack8: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub function: String,
    pub interval: Interval,
    pub params: ExponentParams,
    pub quad_tol: f64,
    pub slack_tol: f64,
    /// Error bound on every `lhs` entry (the mean integral is shared).
    pub quadrature_error: f64,
    pub hypotheses: Hypotheses,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    /// Smallest slack per weighted bound, as `(slack6, slack7, slack8)`.
    pub fn min_slacks(&self) -> (f64, f64, f64) {
        self.rows.iter().fold(
            (f64::INFINITY, f64::INFINITY, f64::INFINITY),
            |(s6, s7, s8), r| (s6.min(r.slack6), s7.min(r.slack7), s8.min(r.slack8)),
        )
    }

    /// Rows where a bound with a certified hypothesis is exceeded beyond
    /// tolerance.
    pub fn violating_rows(&self) -> Vec<&SweepRow> {
        let floor = -(self.quadrature_error + self.slack_tol);
        let h = &self.hypotheses;
        self.rows
            .iter()
            .filter(|r| {
                (h.h1.certified && r.slack6 < floor)
                    || (h.hp.certified && r.slack7 < floor)
                    || (h.hq.certified && r.slack8 < floor)
            })
            .collect()
    }

    /// CSV with the fixed header; numbers in shortest round-trip form.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 * (self.rows.len() + 1));
        out.push_str(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                r.x, r.lhs, r.rhs6, r.rhs7, r.rhs8, r.slack6, r.slack7, r.slack8
            );
        }
        out
    }
}

/// Tabulate the left side and the three weighted bounds over an `n`-point
/// uniform grid of `x`. The mean integral is computed once.
pub fn sweep_x<F: RealFunction + ?Sized>(
    f: &F,
    iv: Interval,
    n: usize,
    params: ExponentParams,
    tol: f64,
) -> Result<SweepTable> {
    let opts = VerifyOptions {
        quad_tol: tol,
        ..VerifyOptions::default()
    };
    sweep_x_with(f, iv, n, params, &opts)
}

pub fn sweep_x_with<F: RealFunction + ?Sized>(
    f: &F,
    iv: Interval,
    n: usize,
    params: ExponentParams,
    opts: &VerifyOptions,
) -> Result<SweepTable> {
    if n < 2 {
        return Err(Error::Parameter(format!("sweep needs at least 2 points (got {n})")));
    }
    let hypotheses = certify_all(f, iv, &params, &opts.certify)?;
    let q = integral(f, iv, opts.quad_tol)?;
    let mean = q.value / iv.width();
    let d = DerivativeMagnitudes::of(f, iv)?;

    let rows = (0..n)
        .map(|i| {
            let x = iv.grid_point(i, n);
            let lhs = signed_weighted_deviation(f, iv, x, mean)?.abs();
            let at_x = abs_derivative_at(f, x)?;
            let rhs6 = thm6_from(iv, x, &d, at_x);
            let rhs7 = thm7_from(iv, x, &d, at_x, params.p());
            let rhs8 = thm8_from(iv, x, &d, at_x, params.q());
            Ok(SweepRow {
                x,
                lhs,
                rhs6,
                rhs7,
                rhs8,
                slack6: rhs6 - lhs,
                slack7: rhs7 - lhs,
                slack8: rhs8 - lhs,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(SweepTable {
        function: f.label(),
        interval: iv,
        params,
        quad_tol: opts.quad_tol,
        slack_tol: opts.slack_tol,
        quadrature_error: q.error_estimate / iv.width(),
        hypotheses,
        rows,
    })
}
