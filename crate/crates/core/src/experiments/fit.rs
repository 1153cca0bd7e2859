use serde::Serialize;

use crate::error::{Error, Result};
use crate::stats::Z95;

/// Least-squares fit of `log y = exponent log n + log amplitude`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerFit {
    pub exponent: f64,
    pub amplitude: f64,
    pub r_squared: f64,
    /// Standard error of the slope from the regression residuals.
    pub exponent_se: f64,
    /// Standard error of the log-amplitude.
    pub log_amplitude_se: f64,
    pub exponent_ci95: (f64, f64),
    pub amplitude_ci95: (f64, f64),
    pub points: usize,
}

/// Log-log power-law fit through at least three `(n, value)` pairs with
/// positive entries.
pub fn fit_exponent(pairs: &[(f64, f64)]) -> Result<PowerFit> {
    if pairs.len() < 3 {
        return Err(Error::Domain(format!("a power-law fit needs at least 3 points, got {}", pairs.len())));
    }
    if let Some(p) = pairs.iter().find(|(n, y)| !(*n > 0.0 && *y > 0.0)) {
        return Err(Error::Domain(format!("non-positive pair {p:?} in power-law fit")));
    }
    let k = pairs.len() as f64;
    let xs: Vec<f64> = pairs.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = pairs.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Domain("power-law fit needs at least two distinct n".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let r_squared = if syy == 0.0 { 1.0 } else { 1.0 - sse / syy };
    let sigma2 = sse / (k - 2.0);
    let exponent_se = (sigma2 / sxx).sqrt();
    let log_amplitude_se = (sigma2 * (1.0 / k + mx * mx / sxx)).sqrt();
    Ok(PowerFit {
        exponent: slope,
        amplitude: intercept.exp(),
        r_squared,
        exponent_se,
        log_amplitude_se,
        exponent_ci95: (slope - Z95 * exponent_se, slope + Z95 * exponent_se),
        amplitude_ci95: ((intercept - Z95 * log_amplitude_se).exp(), (intercept + Z95 * log_amplitude_se).exp()),
        points: pairs.len(),
    })
}
