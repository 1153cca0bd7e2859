use std::ops::Range;

use super::splits::{NodeAddress, SplitSource, MAX_DEPTH};
use crate::analytic::{beta_exp, mean_curve_with};
use crate::error::{Error, Result};
use crate::grid::{grid_points, GridFunction};

/// Default cap on the number of expanded boxes in one sample path.
pub const DEFAULT_BOX_BUDGET: u64 = 200_000_000;

/// A box of the level-`depth` partition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelBox {
    pub address: NodeAddress,
    pub lo: f64,
    pub hi: f64,
    pub volume: f64,
}

/// Z_n evaluated at the sorted points `points`.
///
/// Z_n(s) is the sum over the depth-`depth` boxes whose x-extent contains
/// `s` of `vol^b * h((s - lo) / (hi - lo))`. Only boxes containing at least
/// one requested point are expanded.
pub fn evaluate_zn<S: SplitSource + ?Sized>(
    depth: u32,
    points: &[f64],
    splits: &S,
    box_budget: u64,
) -> Result<Vec<f64>> {
    if depth > MAX_DEPTH {
        return Err(Error::Domain(format!("depth {depth} exceeds the maximum {MAX_DEPTH}")));
    }
    if points.windows(2).any(|w| w[0] > w[1]) || points.iter().any(|s| !(0.0..=1.0).contains(s)) {
        return Err(Error::Domain("query points must be sorted and lie in [0, 1]".into()));
    }
    let mut walker = Walker {
        splits,
        beta: beta_exp(),
        depth,
        points,
        out: vec![0.0; points.len()],
        expanded: 0,
        budget: box_budget,
    };
    walker.visit(NodeAddress::ROOT, 0.0, 1.0, 1.0, 0..points.len())?;
    Ok(walker.out)
}

/// One sample path of Z_n on the grid `j / grid_size`.
pub fn simulate_zn<S: SplitSource + ?Sized>(
    depth: u32,
    grid_size: usize,
    splits: &S,
    box_budget: u64,
) -> Result<GridFunction> {
    if grid_size == 0 {
        return Err(Error::Domain("grid size must be at least 1".into()));
    }
    let values = evaluate_zn(depth, &grid_points(grid_size), splits, box_budget)?;
    GridFunction::new(values)
}

/// The level-`depth` boxes whose x-extent contains `s`, left to right.
pub fn level_boxes<S: SplitSource + ?Sized>(depth: u32, s: f64, splits: &S) -> Vec<LevelBox> {
    let mut frontier = vec![LevelBox { address: NodeAddress::ROOT, lo: 0.0, hi: 1.0, volume: 1.0 }];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(frontier.len() * 2);
        for bx in frontier {
            let (u, v) = splits.split(bx.address);
            let x = bx.lo + u * (bx.hi - bx.lo);
            if s < x {
                next.push(LevelBox { address: bx.address.child(0), lo: bx.lo, hi: x, volume: bx.volume * u * v });
                next.push(LevelBox { address: bx.address.child(1), lo: bx.lo, hi: x, volume: bx.volume * u * (1.0 - v) });
            } else {
                next.push(LevelBox { address: bx.address.child(2), lo: x, hi: bx.hi, volume: bx.volume * (1.0 - u) * v });
                next.push(LevelBox { address: bx.address.child(3), lo: x, hi: bx.hi, volume: bx.volume * (1.0 - u) * (1.0 - v) });
            }
        }
        frontier = next;
    }
    frontier
}

struct Walker<'a, S: ?Sized> {
    splits: &'a S,
    beta: f64,
    depth: u32,
    points: &'a [f64],
    out: Vec<f64>,
    expanded: u64,
    budget: u64,
}

impl<S: SplitSource + ?Sized> Walker<'_, S> {
    fn visit(&mut self, addr: NodeAddress, lo: f64, hi: f64, weight: f64, range: Range<usize>) -> Result<()> {
        if addr.depth == self.depth {
            let width = hi - lo;
            for i in range {
                let t = (self.points[i] - lo) / width;
                self.out[i] += weight * mean_curve_with(self.beta, t);
            }
            return Ok(());
        }
        self.expanded += 1;
        if self.expanded > self.budget {
            return Err(Error::Budget(format!("more than {} boxes expanded", self.budget)));
        }
        let (u, v) = self.splits.split(addr);
        let x = lo + u * (hi - lo);
        let mid = range.start + self.points[range.clone()].partition_point(|&s| s < x);
        let b = self.beta;
        let (vb, v1b) = (v.powf(b), (1.0 - v).powf(b));
        if mid > range.start {
            let w = weight * u.powf(b);
            self.visit(addr.child(0), lo, x, w * vb, range.start..mid)?;
            self.visit(addr.child(1), lo, x, w * v1b, range.start..mid)?;
        }
        if mid < range.end {
            let w = weight * (1.0 - u).powf(b);
            self.visit(addr.child(2), x, hi, w * vb, mid..range.end)?;
            self.visit(addr.child(3), x, hi, w * v1b, mid..range.end)?;
        }
        Ok(())
    }
}
