//! Special functions and the closed-form constants of partial match costs.

mod constants;
mod moments;
mod special;

pub use constants::{beta_exp, constants, mean_curve, ConstantsTable};
pub(crate) use constants::mean_curve_with;
pub use moments::{moment_recurrence, moment_recurrence_with, MomentSequence, RecurrenceForm};
pub use special::{beta_fn, binomial, gamma_fn, ln_beta, ln_gamma};
