//! The limit process Z of the rescaled partial match cost.
//!
//! Z is built on the infinite 4-ary tree whose nodes carry independent
//! uniform splits `(U, V)`. Starting from the mean shape h at depth n and
//! applying the operator G upwards gives Z_n, a martingale in n for every
//! fixed s. Z_n(s) is a sum of exactly 2^n terms, one per depth-n box cut by
//! the vertical line at s.

mod estimate;
mod operator;
mod simulate;
mod splits;

pub use estimate::{
    estimate_sup, fixed_point_residual_mc, point_moments, replicate_splits, second_moment_ratio_at_depth,
    FixedPointCheck, PointMoments, SupEstimate, SUP_NOTE,
};
pub use operator::apply_g;
pub use simulate::{evaluate_zn, level_boxes, simulate_zn, LevelBox, DEFAULT_BOX_BUDGET};
pub use splits::{FixedSplits, HashedSplits, NodeAddress, SplitSource, MAX_DEPTH};
