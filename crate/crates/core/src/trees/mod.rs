//! Point quadtrees, k-d trees and relaxed k-d trees with partial match
//! query costs.
//!
//! A partial match query for the vertical line at `s` visits exactly the
//! nodes whose region meets the line. Regions are half-open, `[lo, hi)`, and
//! a query with `s` equal to a node's split coordinate continues on the high
//! side.

mod geometry;
mod io;
mod profile;
mod sampling;
mod tree;

pub use geometry::{Point, Region};
pub use io::{read_points_csv, read_points_file};
pub use profile::CostProfile;
pub use sampling::{poisson_point_count, sample_uniform_points};
pub use tree::{Axis, Node, Quadrant, SearchTree, TreeKind, DEFAULT_DISCRIMINANT_SEED};
