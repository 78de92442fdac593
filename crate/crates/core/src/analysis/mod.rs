//! Studies built on the bounds: `x`-sweeps, the bound-minimizing `x`, and
//! seeded fuzz campaigns over generated functions.

mod fuzz;
mod optimal;
mod sweep;

pub use fuzz::{
    fuzz, ratio_bucket, run_trial, trial_seed, FuzzConfig, FuzzSummary, TrialEntry, TrialOutcome,
    HISTOGRAM_BUCKETS,
};
pub use optimal::{optimal_x, OptimalX, EXPLORATORY_NOTE};
pub use sweep::{sweep_x, sweep_x_with, SweepRow, SweepTable, CSV_HEADER};
