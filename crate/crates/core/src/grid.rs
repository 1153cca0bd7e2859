use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::output::fmt_sig;

/// Values of a function at the uniform grid `s_j = j / G`, `j = 0..=G`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridFunction {
    grid_size: usize,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::Domain("a grid function needs at least two values".into()));
        }
        Ok(Self { grid_size: values.len() - 1, values })
    }

    pub fn from_fn(grid_size: usize, f: impl Fn(f64) -> f64) -> Self {
        assert!(grid_size >= 1, "grid size must be positive");
        let values = (0..=grid_size).map(|j| f(j as f64 / grid_size as f64)).collect();
        Self { grid_size, values }
    }

    pub fn zeros(grid_size: usize) -> Self {
        Self::from_fn(grid_size, |_| 0.0)
    }

    pub fn grid_size(&self) -> usize {
        self.grid_size
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Abscissa of grid point `j`.
    pub fn s(&self, j: usize) -> f64 {
        j as f64 / self.grid_size as f64
    }

    /// All abscissae.
    pub fn abscissae(&self) -> Vec<f64> {
        grid_points(self.grid_size)
    }

    /// (index, value) of the largest value; first index on ties.
    pub fn argmax(&self) -> (usize, f64) {
        self.values
            .iter()
            .copied()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (j, v)| if v > best.1 { (j, v) } else { best })
    }

    pub fn max(&self) -> f64 {
        self.argmax().1
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// `sup_j |self_j - other_j|`; both grids must match.
    pub fn sup_distance(&self, other: &GridFunction) -> f64 {
        assert_eq!(self.grid_size, other.grid_size, "grid sizes differ");
        self.values.iter().zip(&other.values).fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Two-column CSV `s,<column>`.
    pub fn write_csv<W: Write>(&self, out: W, column: &str) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["s", column])?;
        for (j, v) in self.values.iter().enumerate() {
            w.write_record([fmt_sig(self.s(j)), fmt_sig(*v)])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// `[0, 1/G, ..., 1]`.
pub fn grid_points(grid_size: usize) -> Vec<f64> {
    (0..=grid_size).map(|j| j as f64 / grid_size as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        let g = GridFunction::from_fn(4, |s| s * (1.0 - s));
        assert_eq!(g.values().len(), 5);
        assert_eq!(g.argmax(), (2, 0.25));
        assert_eq!(g.s(1), 0.25);
        let z = GridFunction::zeros(4);
        assert_eq!(g.sup_distance(&z), 0.25);
        assert!(GridFunction::new(vec![1.0]).is_err());
    }

    #[test]
    fn csv_columns() {
        let g = GridFunction::from_fn(2, |s| s);
        let mut buf = Vec::new();
        g.write_csv(&mut buf, "z").unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "s,z\n0,0\n0.5,0.5\n1,1\n");
    }
}
