use serde::Serialize;

use super::constants::beta_exp;
use super::special::{beta_fn, binomial, ln_beta};
use crate::error::{Error, Result};

/// Moments c_1..c_M of the normalized one-dimensional marginal Z(s)/h(s).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentSequence {
    /// `values[m - 1]` holds c_m.
    pub values: Vec<f64>,
}

impl MomentSequence {
    /// c_m for m >= 1.
    pub fn get(&self, m: usize) -> Option<f64> {
        m.checked_sub(1).and_then(|i| self.values.get(i).copied())
    }
}

/// Prefactor convention of the moment recurrence.
///
/// The published recurrence carries a factor 2(bm + 1). Taking m-th moments
/// of the limit fixed-point equation directly gives (bm + 1) instead, which
/// at m = 2 reproduces the second moment constant that solves the mu_2
/// integral equation. The published form is therefore exactly twice the
/// second moment; both are exposed so the discrepancy can be measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RecurrenceForm {
    Published,
    FixedPointConsistent,
}

/// Moment recurrence in its published form.
pub fn moment_recurrence(max_order: usize) -> Result<MomentSequence> {
    moment_recurrence_with(max_order, RecurrenceForm::Published)
}

pub fn moment_recurrence_with(max_order: usize, form: RecurrenceForm) -> Result<MomentSequence> {
    if max_order == 0 {
        return Err(Error::Domain("moment order must be at least 1".into()));
    }
    let b = beta_exp();
    let lead = match form {
        RecurrenceForm::Published => 2.0,
        RecurrenceForm::FixedPointConsistent => 1.0,
    };
    let mut c = Vec::with_capacity(max_order);
    c.push(1.0);
    for m in 2..=max_order {
        let mf = m as f64;
        let denom = (mf - 1.0) * (mf + 1.0 - 1.5 * b * mf);
        if denom <= 1e-12 {
            return Err(Error::SingularRecurrence { m });
        }
        let mut sum = 0.0;
        for l in 1..m {
            let (a1, a2) = (b * l as f64 + 1.0, b * (m - l) as f64 + 1.0);
            let weight = if m <= 50 {
                binomial(m as u64, l as u64) * beta_fn(a1, a2)?
            } else {
                (binomial(m as u64, l as u64).ln() + ln_beta(a1, a2)?).exp()
            };
            sum += weight * c[l - 1] * c[m - l - 1];
        }
        c.push(lead * (b * mf + 1.0) / denom * sum);
    }
    Ok(MomentSequence { values: c })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::constants;

    #[test]
    fn first_moment_is_one() {
        assert_eq!(moment_recurrence(1).unwrap().values, vec![1.0]);
        assert!(moment_recurrence(0).is_err());
    }

    #[test]
    fn second_moment_hand_expansion() {
        // m = 2: prefactor 2(2b+1)/(3 - 3b), sum = 2 B(b+1, b+1)
        let k = constants();
        let bb = k.beta_bb();
        let b = k.beta_exp;
        let published = moment_recurrence(2).unwrap().get(2).unwrap();
        let expected = 4.0 * (2.0 * b + 1.0) * bb / (3.0 * (1.0 - b));
        assert!((published - expected).abs() < 1e-14);
        assert!((published - 2.0 * k.c2).abs() < 1e-14);

        let consistent = moment_recurrence_with(2, RecurrenceForm::FixedPointConsistent)
            .unwrap()
            .get(2)
            .unwrap();
        assert!((consistent - k.c2).abs() < 1e-14);
    }

    #[test]
    fn moments_positive_up_to_high_order() {
        for form in [RecurrenceForm::Published, RecurrenceForm::FixedPointConsistent] {
            let seq = moment_recurrence_with(60, form).unwrap();
            assert_eq!(seq.values.len(), 60);
            assert!(seq.values.iter().all(|&c| c > 0.0 && c.is_finite()));
        }
    }

    #[test]
    fn consistent_moments_dominate_jensen() {
        // E[Z^m] >= E[Z]^m = 1 for the fixed-point-consistent form
        let seq = moment_recurrence_with(12, RecurrenceForm::FixedPointConsistent).unwrap();
        assert!(seq.values.iter().all(|&c| c >= 1.0));
    }
}
