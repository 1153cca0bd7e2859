use rand::Rng;
use rand_distr::{Distribution, Poisson};

use super::geometry::Point;
use crate::error::{Error, Result};

/// `n` independent uniform points of the unit square.
pub fn sample_uniform_points<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Point> {
    (0..n).map(|_| Point::new(rng.random::<f64>(), rng.random::<f64>())).collect()
}

/// A Poisson(t) draw: the number of points of a unit-intensity Poisson
/// process in the unit square observed up to time `t`.
pub fn poisson_point_count<R: Rng + ?Sized>(t: f64, rng: &mut R) -> Result<u64> {
    let dist = Poisson::new(t).map_err(|e| Error::Domain(format!("Poisson intensity {t}: {e}")))?;
    Ok(dist.sample(rng) as u64)
}
