use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::DEFAULT_SEED;
use crate::trees::TreeKind;

/// Default cap on the total number of points generated by one experiment.
pub const DEFAULT_POINT_BUDGET: u64 = 4_000_000_000;

/// One replicated cost experiment. Readable from a TOML file; missing keys
/// take their defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: TreeKind,
    /// Tree sizes, or Poisson intensities when `poissonized`.
    pub n_values: Vec<u64>,
    /// Fixed query lines.
    pub s_values: Vec<f64>,
    /// Also query a fresh uniform line per replicate.
    pub uniform_query: bool,
    pub replicates: usize,
    pub master_seed: u64,
    pub poissonized: bool,
    /// Record the profile integral and the worst query cost.
    pub record_profile: bool,
    /// Keep every replicate's observations in the result.
    pub keep_raw: bool,
    /// Upper bound on the sum over n of n times replicates.
    pub point_budget: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            kind: TreeKind::Quadtree,
            n_values: vec![1_000, 10_000],
            s_values: vec![0.5],
            uniform_query: true,
            replicates: 200,
            master_seed: DEFAULT_SEED,
            poissonized: false,
            record_profile: false,
            keep_raw: false,
            point_budget: DEFAULT_POINT_BUDGET,
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.replicates < 2 {
            return Err(Error::Config(format!("replicates must be at least 2, got {}", self.replicates)));
        }
        if self.n_values.is_empty() {
            return Err(Error::Config("n_values is empty".into()));
        }
        if self.n_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("n_values must be strictly increasing".into()));
        }
        if self.n_values[0] == 0 {
            return Err(Error::Config("n_values must be positive".into()));
        }
        if let Some(s) = self.s_values.iter().find(|s| !(0.0..=1.0).contains(*s)) {
            return Err(Error::Config(format!("query line {s} is outside [0, 1]")));
        }
        if self.s_values.is_empty() && !self.uniform_query && !self.record_profile {
            return Err(Error::Config("nothing to measure: no s_values, uniform_query or record_profile".into()));
        }
        let work = self.total_points();
        if work > self.point_budget {
            return Err(Error::Budget(format!(
                "{work} points requested, budget is {}",
                self.point_budget
            )));
        }
        Ok(())
    }

    /// Sum over n of n times replicates (expected, when poissonized).
    pub fn total_points(&self) -> u64 {
        self.n_values.iter().map(|n| n.saturating_mul(self.replicates as u64)).fold(0, u64::saturating_add)
    }
}
