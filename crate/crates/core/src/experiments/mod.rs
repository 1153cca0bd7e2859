//! Replicated cost measurements on random trees, power-law fits and the
//! comparison of measured moments with their asymptotic predictions.
//!
//! Every replicate draws from its own stream, keyed by the master seed, the
//! index of its n value and its replicate index, and results are merged in
//! replicate order. Output is therefore identical for any thread count.

mod config;
mod fit;
mod run;
mod theory;

pub use config::{ExperimentConfig, DEFAULT_POINT_BUDGET};
pub use fit::{fit_exponent, PowerFit};
pub use run::{
    run_cost_experiment, run_cost_experiment_with_threads, run_replicate, Cell, ExperimentResult, FitRecord, Query,
    ReplicateRecord,
};
pub use theory::{compare_to_theory, Quantity, SupReference, TheoryRow};
