use std::fmt;
use std::io::Write;

use rand::Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::config::ExperimentConfig;
use super::fit::{fit_exponent, PowerFit};
use crate::error::{Error, Result};
use crate::output::fmt_sig;
use crate::rng::{replicate_stream, tag};
use crate::stats::Summary;
use crate::trees::{poisson_point_count, sample_uniform_points, SearchTree, TreeKind};

/// What a cell measures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Query {
    /// C_n(s) at a fixed line.
    Fixed(f64),
    /// C_n(xi) at a fresh uniform line per replicate.
    Uniform,
    /// Integral of the cost profile over [0, 1].
    Integral,
    /// Worst query cost S_n.
    Worst,
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Query::Fixed(s) => f.write_str(&fmt_sig(*s)),
            Query::Uniform => f.write_str("xi"),
            Query::Integral => f.write_str("integral"),
            Query::Worst => f.write_str("sup"),
        }
    }
}

impl Serialize for Query {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

/// Everything measured on one tree.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReplicateRecord {
    pub n: u64,
    pub replicate: u64,
    /// Points actually inserted (differs from `n` when poissonized).
    pub points: u64,
    /// Times the point set was redrawn because two points shared a coordinate.
    pub redraws: u32,
    /// Costs at the configured `s_values`, in order.
    pub fixed: Vec<u64>,
    pub xi: Option<f64>,
    pub uniform_cost: Option<u64>,
    pub integral: Option<f64>,
    pub worst: Option<u64>,
}

/// Replicate summary of one (n, query) pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cell {
    pub kind: TreeKind,
    pub n: u64,
    pub query: Query,
    pub summary: Summary,
}

/// Power-law fit of one query's means across n.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitRecord {
    pub query: Query,
    /// Fitted to mean + 1 rather than the mean.
    pub shifted: bool,
    pub fit: PowerFit,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub cells: Vec<Cell>,
    pub fits: Vec<FitRecord>,
    pub total_redraws: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub raw: Option<Vec<ReplicateRecord>>,
}

impl ExperimentResult {
    pub fn cell(&self, n: u64, query: Query) -> Option<&Cell> {
        self.cells.iter().find(|c| c.n == n && c.query == query)
    }

    pub fn fit(&self, query: Query, shifted: bool) -> Option<&PowerFit> {
        self.fits.iter().find(|f| f.query == query && f.shifted == shifted).map(|f| &f.fit)
    }

    /// CSV with columns `kind,n,s_or_xi,replicates,mean,var,stderr`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["kind", "n", "s_or_xi", "replicates", "mean", "var", "stderr"])?;
        for c in &self.cells {
            w.write_record([
                c.kind.to_string(),
                c.n.to_string(),
                c.query.to_string(),
                c.summary.count.to_string(),
                fmt_sig(c.summary.mean),
                fmt_sig(c.summary.variance),
                fmt_sig(c.summary.std_err),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }
}

/// Runs the experiment on the global rayon pool. The result depends only on
/// the configuration, never on the number of threads.
pub fn run_cost_experiment(config: &ExperimentConfig) -> Result<ExperimentResult> {
    config.validate()?;
    let jobs: Vec<(usize, u64)> = (0..config.n_values.len())
        .flat_map(|i| (0..config.replicates as u64).map(move |r| (i, r)))
        .collect();
    let records: Vec<ReplicateRecord> =
        jobs.into_par_iter().map(|(i, r)| run_replicate(config, i, r)).collect::<Result<_>>()?;
    Ok(aggregate(config, records))
}

/// As [`run_cost_experiment`] on a dedicated pool of `threads` threads
/// (0 = the global pool).
pub fn run_cost_experiment_with_threads(config: &ExperimentConfig, threads: usize) -> Result<ExperimentResult> {
    if threads == 0 {
        return run_cost_experiment(config);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    pool.install(|| run_cost_experiment(config))
}

/// One replicate, drawn from its own stream.
pub fn run_replicate(config: &ExperimentConfig, n_index: usize, replicate: u64) -> Result<ReplicateRecord> {
    let n = config.n_values[n_index];
    let mut rng = replicate_stream(config.master_seed, tag::COST, n_index as u64, replicate);
    let points = if config.poissonized { poisson_point_count(n as f64, &mut rng)? } else { n };
    let discriminant_seed: u64 = rng.random();
    let mut redraws = 0u32;
    let tree = loop {
        let pts = sample_uniform_points(points as usize, &mut rng);
        match SearchTree::build_seeded(&pts, config.kind, discriminant_seed) {
            Ok(t) => break t,
            Err(Error::DuplicateCoordinate { .. }) => redraws += 1,
            Err(e) => return Err(e),
        }
    };
    let fixed = config.s_values.iter().map(|&s| tree.partial_match_cost(s)).collect();
    let (xi, uniform_cost) = if config.uniform_query {
        let xi: f64 = rng.random();
        (Some(xi), Some(tree.partial_match_cost(xi)))
    } else {
        (None, None)
    };
    let (integral, worst) = if config.record_profile {
        let profile = tree.cost_profile();
        (Some(profile.integral()), Some(profile.max().0))
    } else {
        (None, None)
    };
    Ok(ReplicateRecord { n, replicate, points, redraws, fixed, xi, uniform_cost, integral, worst })
}

fn aggregate(config: &ExperimentConfig, records: Vec<ReplicateRecord>) -> ExperimentResult {
    let mut queries: Vec<Query> = config.s_values.iter().map(|&s| Query::Fixed(s)).collect();
    if config.uniform_query {
        queries.push(Query::Uniform);
    }
    if config.record_profile {
        queries.extend([Query::Integral, Query::Worst]);
    }
    let per_n = config.replicates;
    let mut cells = Vec::new();
    for (i, &n) in config.n_values.iter().enumerate() {
        let block = &records[i * per_n..(i + 1) * per_n];
        for &q in &queries {
            let values: Vec<f64> = block.iter().map(|r| observation(config, r, q)).collect();
            cells.push(Cell { kind: config.kind, n, query: q, summary: Summary::from_slice(&values) });
        }
    }

    let mut fits = Vec::new();
    if config.n_values.len() >= 3 {
        for &q in &queries {
            let means: Vec<(f64, f64)> =
                cells.iter().filter(|c| c.query == q).map(|c| (c.n as f64, c.summary.mean)).collect();
            for shifted in [false, true] {
                if shifted && q != Query::Uniform {
                    continue;
                }
                let pairs: Vec<(f64, f64)> =
                    means.iter().map(|&(n, m)| (n, if shifted { m + 1.0 } else { m })).collect();
                if let Ok(fit) = fit_exponent(&pairs) {
                    fits.push(FitRecord { query: q, shifted, fit });
                }
            }
        }
    }

    let total_redraws = records.iter().map(|r| u64::from(r.redraws)).sum();
    ExperimentResult {
        config: config.clone(),
        cells,
        fits,
        total_redraws,
        raw: config.keep_raw.then_some(records),
    }
}

fn observation(config: &ExperimentConfig, r: &ReplicateRecord, q: Query) -> f64 {
    match q {
        Query::Fixed(s) => {
            let k = config.s_values.iter().position(|&x| x == s).expect("configured line");
            r.fixed[k] as f64
        }
        Query::Uniform => r.uniform_cost.expect("uniform query recorded") as f64,
        Query::Integral => r.integral.expect("profile recorded"),
        Query::Worst => r.worst.expect("profile recorded") as f64,
    }
}
