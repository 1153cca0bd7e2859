//! Random quadtrees and k-d trees, the cost of partial match queries in
//! them, and the random limit process of that cost.
//!
//! The crate is organised by task:
//!
//! - [`analytic`]: Gamma/Beta functions and every closed-form constant.
//! - [`trees`]: tree construction, query costs and cost profiles.
//! - [`limit`]: the limit process Z built by iterating a random operator.
//! - [`mu2`]: the second-moment integral equation, solved by iteration.
//! - [`experiments`]: replicated Monte Carlo measurements and power-law fits.
//! - [`cli`]: the `pmq` command line front end.

pub mod analytic;
pub mod cli;
pub mod error;
pub mod experiments;
pub mod grid;
pub mod limit;
pub mod mu2;
pub mod output;
pub mod rng;
pub mod stats;
pub mod trees;

pub use error::{Error, Result};
