//! Gamma and Beta functions on the positive real axis.
//!
//! Gamma uses the Lanczos approximation with g = 7 and nine coefficients
//! (the widely published set also used by GSL). Relative error is below
//! 1e-14 on (0, 50]; arguments below 1/2 go through the reflection formula.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// ln(sqrt(2 pi))
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

fn lanczos_sum(x: f64) -> f64 {
    // x has already been shifted down by one
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    acc
}

fn check_positive(x: f64, what: &str) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} requires a positive finite argument, got {x}")))
    }
}

/// Gamma function for `x > 0`.
pub fn gamma_fn(x: f64) -> Result<f64> {
    check_positive(x, "gamma")?;
    Ok(gamma_unchecked(x))
}

fn gamma_unchecked(x: f64) -> f64 {
    if x <= 23.0 && x.fract() == 0.0 {
        // n! is exact in f64 up to 22!
        return (2..x as u64).fold(1.0, |acc, k| acc * k as f64);
    }
    if x < 0.5 {
        PI / ((PI * x).sin() * gamma_unchecked(1.0 - x))
    } else {
        let x = x - 1.0;
        let t = x + LANCZOS_G + 0.5;
        (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * lanczos_sum(x)
    }
}

/// Natural logarithm of Gamma for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    check_positive(x, "ln_gamma")?;
    Ok(ln_gamma_unchecked(x))
}

fn ln_gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        (PI / (PI * x).sin()).ln() - ln_gamma_unchecked(1.0 - x)
    } else {
        let x = x - 1.0;
        let t = x + LANCZOS_G + 0.5;
        LN_SQRT_2PI + (x + 0.5) * t.ln() - t + lanczos_sum(x).ln()
    }
}

/// Euler Beta function B(a, b) = Γ(a)Γ(b)/Γ(a+b).
pub fn beta_fn(a: f64, b: f64) -> Result<f64> {
    check_positive(a, "beta")?;
    check_positive(b, "beta")?;
    if a + b < 100.0 {
        Ok(gamma_unchecked(a) * gamma_unchecked(b) / gamma_unchecked(a + b))
    } else {
        Ok(ln_beta_unchecked(a, b).exp())
    }
}

/// ln B(a, b).
pub fn ln_beta(a: f64, b: f64) -> Result<f64> {
    check_positive(a, "ln_beta")?;
    check_positive(b, "ln_beta")?;
    Ok(ln_beta_unchecked(a, b))
}

fn ln_beta_unchecked(a: f64, b: f64) -> f64 {
    ln_gamma_unchecked(a) + ln_gamma_unchecked(b) - ln_gamma_unchecked(a + b)
}

/// Binomial coefficient as a float: exact integer arithmetic up to m = 50,
/// log-Gamma beyond.
pub fn binomial(m: u64, k: u64) -> f64 {
    if k > m {
        return 0.0;
    }
    let k = k.min(m - k);
    if m <= 50 {
        let mut acc: u128 = 1;
        for i in 0..k {
            acc = acc * u128::from(m - i) / u128::from(i + 1);
        }
        acc as f64
    } else {
        (ln_gamma_unchecked(m as f64 + 1.0)
            - ln_gamma_unchecked(k as f64 + 1.0)
            - ln_gamma_unchecked((m - k) as f64 + 1.0))
        .exp()
    }
}
