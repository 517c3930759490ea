//! Time stepping with filters, reference runs and error measurement.

mod propagator;
mod reference;
mod run;

pub use propagator::{build_propagator, compute_vmax, Propagator};
pub use reference::{relative_error, ReferenceSolution};
pub use run::{observation_times, propagate, FilterEvent, Observer, RunPlan, RunRecord, NORM_GROWTH_TOLERANCE};
