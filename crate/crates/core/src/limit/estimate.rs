//! Monte Carlo summaries of the limit process.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::simulate::{evaluate_zn, simulate_zn};
use super::splits::HashedSplits;
use crate::analytic::beta_exp;
use crate::error::{Error, Result};
use crate::grid::grid_points;
use crate::rng::{mix_words, replicate_stream, tag};
use crate::stats::{Summary, Z95};

/// Split field of replicate `replicate` under `seed`.
pub fn replicate_splits(seed: u64, replicate: u64) -> HashedSplits {
    HashedSplits::new(mix_words(&[seed, tag::LIMIT, replicate]))
}

/// Per-point replicate moments of Z_n.
#[derive(Debug, Clone, Serialize)]
pub struct PointMoments {
    pub depth: u32,
    pub points: Vec<f64>,
    /// Summary of Z_n(s) per point.
    pub first: Vec<Summary>,
    /// Summary of Z_n(s)^2 per point.
    pub second: Vec<Summary>,
}

/// Replicate means and second moments of Z_n at the sorted `points`.
pub fn point_moments(depth: u32, points: &[f64], replicates: usize, seed: u64, box_budget: u64) -> Result<PointMoments> {
    if replicates < 2 {
        return Err(Error::Domain("at least two replicates are needed".into()));
    }
    let paths: Vec<Vec<f64>> = (0..replicates as u64)
        .into_par_iter()
        .map(|r| evaluate_zn(depth, points, &replicate_splits(seed, r), box_budget))
        .collect::<Result<_>>()?;
    Ok(summarize_paths(depth, points, &paths))
}

fn summarize_paths(depth: u32, points: &[f64], paths: &[Vec<f64>]) -> PointMoments {
    let column = |j: usize, sq: bool| -> Vec<f64> {
        paths.iter().map(|p| if sq { p[j] * p[j] } else { p[j] }).collect()
    };
    PointMoments {
        depth,
        points: points.to_vec(),
        first: (0..points.len()).map(|j| Summary::from_slice(&column(j, false))).collect(),
        second: (0..points.len()).map(|j| Summary::from_slice(&column(j, true))).collect(),
    }
}

/// Monte Carlo estimate of E[max over the grid of Z_n].
#[derive(Debug, Clone, Serialize)]
pub struct SupEstimate {
    pub depth: u32,
    pub grid_size: usize,
    pub summary: Summary,
    pub ci95: (f64, f64),
    /// Replicate mean of Z_n(1/2) (or of the grid point nearest 1/2).
    pub mean_at_half: f64,
    pub note: &'static str,
}

pub const SUP_NOTE: &str = "grid maximum of Z_n: a lower bound for the supremum of Z_n, itself an approximation of the supremum of Z";

pub fn estimate_sup(depth: u32, grid_size: usize, replicates: usize, seed: u64, box_budget: u64) -> Result<SupEstimate> {
    if replicates < 2 {
        return Err(Error::Domain("at least two replicates are needed".into()));
    }
    let half = grid_size / 2;
    let per_rep: Vec<(f64, f64)> = (0..replicates as u64)
        .into_par_iter()
        .map(|r| {
            let z = simulate_zn(depth, grid_size, &replicate_splits(seed, r), box_budget)?;
            Ok((z.max(), z.values()[half]))
        })
        .collect::<Result<_>>()?;
    let maxima: Vec<f64> = per_rep.iter().map(|p| p.0).collect();
    let at_half: Vec<f64> = per_rep.iter().map(|p| p.1).collect();
    let summary = Summary::from_slice(&maxima);
    Ok(SupEstimate {
        depth,
        grid_size,
        ci95: summary.confidence_interval(Z95),
        summary,
        mean_at_half: Summary::from_slice(&at_half).mean,
        note: SUP_NOTE,
    })
}

/// Distributional check of the fixed-point equation at depth `n`: Z_n
/// against G applied to four independent copies of Z_{n-1}.
#[derive(Debug, Clone, Serialize)]
pub struct FixedPointCheck {
    pub depth: u32,
    pub grid_size: usize,
    /// max_j |mean Z_n(s_j) - mean G(Z_{n-1})(s_j)|.
    pub max_mean_discrepancy: f64,
    /// Largest |difference of means| / combined standard error.
    pub max_mean_z: f64,
    pub max_second_discrepancy: f64,
    pub max_second_z: f64,
    pub direct: PointMoments,
    pub recombined: PointMoments,
}

pub fn fixed_point_residual_mc(depth: u32, grid_size: usize, replicates: usize, seed: u64, box_budget: u64) -> Result<FixedPointCheck> {
    if depth == 0 {
        return Err(Error::Domain("the fixed-point check needs depth >= 1".into()));
    }
    let points = grid_points(grid_size);
    let direct = point_moments(depth, &points, replicates, seed, box_budget)?;

    let b = beta_exp();
    let rhs_seed = mix_words(&[seed, 0x7268_73]);
    let paths: Vec<Vec<f64>> = (0..replicates as u64)
        .into_par_iter()
        .map(|r| -> Result<Vec<f64>> {
            let mut rng = replicate_stream(rhs_seed, tag::LIMIT, 0, r);
            let (x, y): (f64, f64) = (rng.random(), rng.random());
            let split = points.partition_point(|&s| s < x);
            let west: Vec<f64> = points[..split].iter().map(|s| s / x).collect();
            let east: Vec<f64> = points[split..].iter().map(|s| (s - x) / (1.0 - x)).collect();
            let copy = |i: u64, pts: &[f64]| {
                evaluate_zn(depth - 1, pts, &HashedSplits::new(mix_words(&[rhs_seed, r, i])), box_budget)
            };
            let (sw, nw, se, ne) = (copy(0, &west)?, copy(1, &west)?, copy(2, &east)?, copy(3, &east)?);
            let (wsw, wnw) = ((x * y).powf(b), (x * (1.0 - y)).powf(b));
            let (wse, wne) = (((1.0 - x) * y).powf(b), ((1.0 - x) * (1.0 - y)).powf(b));
            let mut out: Vec<f64> = sw.iter().zip(&nw).map(|(a, c)| wsw * a + wnw * c).collect();
            out.extend(se.iter().zip(&ne).map(|(a, c)| wse * a + wne * c));
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let recombined = summarize_paths(depth, &points, &paths);

    let (mut mm, mut mz, mut sm, mut sz) = (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
    for j in 0..points.len() {
        let (a, c) = (&direct.first[j], &recombined.first[j]);
        let d = (a.mean - c.mean).abs();
        mm = mm.max(d);
        let se = a.std_err.hypot(c.std_err);
        if se > 0.0 {
            mz = mz.max(d / se);
        }
        let (a, c) = (&direct.second[j], &recombined.second[j]);
        let d = (a.mean - c.mean).abs();
        sm = sm.max(d);
        let se = a.std_err.hypot(c.std_err);
        if se > 0.0 {
            sz = sz.max(d / se);
        }
    }
    Ok(FixedPointCheck {
        depth,
        grid_size,
        max_mean_discrepancy: mm,
        max_mean_z: mz,
        max_second_discrepancy: sm,
        max_second_z: sz,
        direct,
        recombined,
    })
}

/// Exact E[Z_n(s)^2] / h(s)^2: the second moment ratio starts at 1 and
/// follows c <- rho c + 2 B(b+1, b+1) / (b+1) with
/// rho = 2 / ((2b+1)(b+1)).
pub fn second_moment_ratio_at_depth(depth: u32) -> f64 {
    let b = beta_exp();
    let rho = 2.0 / ((2.0 * b + 1.0) * (b + 1.0));
    let inhomogeneous = 2.0 * crate::analytic::beta_fn(b + 1.0, b + 1.0).expect("positive arguments") / (b + 1.0);
    (0..depth).fold(1.0, |c, _| rho * c + inhomogeneous)
}
