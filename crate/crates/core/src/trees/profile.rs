use std::io::Write;

use serde::Serialize;

use crate::error::Result;
use crate::stats::neumaier_sum;

/// Piecewise-constant cost function on [0, 1].
///
/// `values[i]` is the cost on `[breakpoints[i-1], breakpoints[i])`, with the
/// implicit outer ends 0 and 1 (the last piece is closed at 1).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CostProfile {
    pub breakpoints: Vec<f64>,
    pub values: Vec<u64>,
}

impl CostProfile {
    /// Sweep over half-open x-extents `[lo, hi)`, each adding one to the cost
    /// on its extent.
    pub fn from_extents(extents: impl Iterator<Item = (f64, f64)>) -> Self {
        let mut opens = Vec::new();
        let mut closes = Vec::new();
        for (lo, hi) in extents {
            opens.push(lo);
            if hi < 1.0 {
                closes.push(hi);
            }
        }
        if opens.is_empty() {
            return Self { breakpoints: Vec::new(), values: vec![0] };
        }
        opens.sort_unstable_by(f64::total_cmp);
        closes.sort_unstable_by(f64::total_cmp);

        let mut breakpoints = Vec::new();
        let mut values = Vec::new();
        let (mut i, mut j) = (0, 0);
        let mut level: i64 = 0;
        // every extent starts at or after 0, the root's starts exactly at 0
        while i < opens.len() && opens[i] <= 0.0 {
            level += 1;
            i += 1;
        }
        let mut current = level;
        while i < opens.len() || j < closes.len() {
            let at = match (opens.get(i), closes.get(j)) {
                (Some(&o), Some(&c)) => o.min(c),
                (Some(&o), None) => o,
                (None, Some(&c)) => c,
                (None, None) => unreachable!(),
            };
            while i < opens.len() && opens[i] == at {
                level += 1;
                i += 1;
            }
            while j < closes.len() && closes[j] == at {
                level -= 1;
                j += 1;
            }
            if level != current {
                values.push(current as u64);
                breakpoints.push(at);
                current = level;
            }
        }
        values.push(current as u64);
        Self { breakpoints, values }
    }

    /// Cost at `s`.
    pub fn eval(&self, s: f64) -> u64 {
        self.values[self.breakpoints.partition_point(|&b| b <= s)]
    }

    /// `(s_left, s_right, cost)` for every piece.
    pub fn pieces(&self) -> impl Iterator<Item = (f64, f64, u64)> + '_ {
        let n = self.values.len();
        (0..n).map(move |i| {
            let lo = if i == 0 { 0.0 } else { self.breakpoints[i - 1] };
            let hi = if i + 1 == n { 1.0 } else { self.breakpoints[i] };
            (lo, hi, self.values[i])
        })
    }

    /// Integral over [0, 1]; equals the mean cost of a uniform query line.
    pub fn integral(&self) -> f64 {
        neumaier_sum(self.pieces().map(|(lo, hi, v)| v as f64 * (hi - lo)))
    }

    /// Maximum value and the left end of the first piece attaining it.
    pub fn max(&self) -> (u64, f64) {
        let mut best = (0, 0.0);
        for (lo, _, v) in self.pieces() {
            if v > best.0 {
                best = (v, lo);
            }
        }
        best
    }

    /// CSV with columns `s_left,s_right,cost`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["s_left", "s_right", "cost"])?;
        for (lo, hi, v) in self.pieces() {
            w.write_record([crate::output::fmt_sig(lo), crate::output::fmt_sig(hi), v.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}
