//! Summary statistics with compensated summation.

use serde::Serialize;

/// Neumaier's compensated sum. Order-dependent only at the level of the
/// final rounding, and fully deterministic for a fixed input order.
pub fn neumaier_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Sample summary of a sequence of replicate observations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Summary {
    pub count: usize,
    pub mean: f64,
    /// Unbiased (count - 1) variance.
    pub variance: f64,
    /// sqrt(variance / count).
    pub std_err: f64,
    /// Standard error of the sample variance, from the fourth central moment.
    pub variance_std_err: f64,
}

impl Summary {
    pub fn from_slice(xs: &[f64]) -> Self {
        let n = xs.len();
        if n == 0 {
            return Self { count: 0, mean: f64::NAN, variance: f64::NAN, std_err: f64::NAN, variance_std_err: f64::NAN };
        }
        let nf = n as f64;
        let mean = neumaier_sum(xs.iter().copied()) / nf;
        if n == 1 {
            return Self { count: 1, mean, variance: 0.0, std_err: 0.0, variance_std_err: 0.0 };
        }
        let m2 = neumaier_sum(xs.iter().map(|x| (x - mean).powi(2))) / nf;
        let m4 = neumaier_sum(xs.iter().map(|x| (x - mean).powi(4))) / nf;
        let variance = m2 * nf / (nf - 1.0);
        Self {
            count: n,
            mean,
            variance,
            std_err: (variance / nf).sqrt(),
            variance_std_err: ((m4 - m2 * m2).max(0.0) / nf).sqrt(),
        }
    }

    pub fn from_counts(xs: &[u64]) -> Self {
        let v: Vec<f64> = xs.iter().map(|&x| x as f64).collect();
        Self::from_slice(&v)
    }

    /// Normal-approximation confidence interval `mean +- z * std_err`.
    pub fn confidence_interval(&self, z: f64) -> (f64, f64) {
        (self.mean - z * self.std_err, self.mean + z * self.std_err)
    }
}

/// z-score for a two-sided 95% normal interval.
pub const Z95: f64 = 1.959_963_984_540_054;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let xs = [1e16, 1.0, -1e16, 1.0];
        assert_eq!(neumaier_sum(xs), 2.0);
    }

    #[test]
    fn summary_basic() {
        let s = Summary::from_slice(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(s.count, 4);
        assert_eq!(s.mean, 2.5);
        assert!((s.variance - 5.0 / 3.0).abs() < 1e-15);
        assert!((s.std_err - (5.0 / 12.0_f64).sqrt()).abs() < 1e-15);
        let one = Summary::from_counts(&[1]);
        assert_eq!((one.mean, one.variance), (1.0, 0.0));
        let constant = Summary::from_counts(&[1, 1, 1]);
        assert_eq!((constant.mean, constant.variance), (1.0, 0.0));
    }
}
