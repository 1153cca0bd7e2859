use thiserror::Error;

use crate::trees::Point;

/// Errors produced by this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("point {0:?} lies outside the unit square")]
    OutOfRange(Point),

    #[error("points {first:?} and {second:?} share a coordinate")]
    DuplicateCoordinate { first: Point, second: Point },

    #[error("recurrence denominator is non-positive at m = {m}")]
    SingularRecurrence { m: usize },

    #[error("resource budget exceeded: {0}")]
    Budget(String),

    #[error("fixed-point iteration did not converge after {iterations} iterations (last change {last_change:e})")]
    NoConvergence { iterations: usize, last_change: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
