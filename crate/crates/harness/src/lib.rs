//! Configuration-driven experiments on top of `psf_core`: single runs
//! against a big-box reference, sweeps over the pulse frequency and the
//! tolerance, long stability runs and snapshot comparison.

// `!(x > 0.0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod experiment;
pub mod initial;
pub mod output;
pub mod presets;

pub use config::RunConfig;
pub use error::HarnessError;
pub use experiment::{compare, prepare, run, stability, sweep_delta, sweep_k, RunOutcome, Setup, SweepRow};
