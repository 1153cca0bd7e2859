use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A data point in the unit square.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Fails unless both coordinates are in [0, 1].
    pub fn validated(self) -> Result<Self> {
        if (0.0..=1.0).contains(&self.x) && (0.0..=1.0).contains(&self.y) {
            Ok(self)
        } else {
            Err(Error::OutOfRange(self))
        }
    }
}

/// Half-open rectangle `[x_lo, x_hi) x [y_lo, y_hi)` of the unit square.
///
/// The upper edge at 1 is treated as closed so that the unit square itself
/// contains every point of `[0, 1]^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Region {
    pub x_lo: f64,
    pub x_hi: f64,
    pub y_lo: f64,
    pub y_hi: f64,
}

impl Region {
    pub const UNIT: Region = Region { x_lo: 0.0, x_hi: 1.0, y_lo: 0.0, y_hi: 1.0 };

    #[inline]
    pub fn contains_x(&self, s: f64) -> bool {
        self.x_lo <= s && (s < self.x_hi || (s == 1.0 && self.x_hi == 1.0))
    }

    #[inline]
    pub fn contains_y(&self, t: f64) -> bool {
        self.y_lo <= t && (t < self.y_hi || (t == 1.0 && self.y_hi == 1.0))
    }

    pub fn contains(&self, p: Point) -> bool {
        self.contains_x(p.x) && self.contains_y(p.y)
    }

    /// Nested inside `outer` (closed comparison).
    pub fn is_within(&self, outer: &Region) -> bool {
        outer.x_lo <= self.x_lo && self.x_hi <= outer.x_hi && outer.y_lo <= self.y_lo && self.y_hi <= outer.y_hi
    }

    pub fn width(&self) -> f64 {
        self.x_hi - self.x_lo
    }

    pub fn height(&self) -> f64 {
        self.y_hi - self.y_lo
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    /// Interiors overlap.
    pub fn overlaps(&self, other: &Region) -> bool {
        self.x_lo < other.x_hi && other.x_lo < self.x_hi && self.y_lo < other.y_hi && other.y_lo < self.y_hi
    }

    pub(crate) fn split_x(&self, at: f64) -> (Region, Region) {
        (Region { x_hi: at, ..*self }, Region { x_lo: at, ..*self })
    }

    pub(crate) fn split_y(&self, at: f64) -> (Region, Region) {
        (Region { y_hi: at, ..*self }, Region { y_lo: at, ..*self })
    }
}
