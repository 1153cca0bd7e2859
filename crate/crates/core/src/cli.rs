//! The `pmq` command line.
//!
//! Exit status is 0 on success, 1 on a usage error and 2 on a runtime
//! error. Data go to standard output unless an output file is named; every
//! subcommand is byte-reproducible for a fixed seed.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analytic::{constants, moment_recurrence_with, RecurrenceForm};
use crate::error::{Error, Result};
use crate::experiments::{compare_to_theory, run_cost_experiment_with_threads, ExperimentConfig, SupReference};
use crate::limit::{
    estimate_sup, fixed_point_residual_mc, point_moments, replicate_splits, simulate_zn, DEFAULT_BOX_BUDGET,
};
use crate::mu2::{contraction_constant, linear_part_norm, solve_fixed_point, QuadratureConfig};
use crate::output::{fmt_sig, to_json};
use crate::rng::{replicate_stream, tag, DEFAULT_SEED};
use crate::trees::{read_points_file, sample_uniform_points, Point, SearchTree, TreeKind};

#[derive(Debug, Parser)]
#[command(name = "pmq", version, about = "Partial match queries in random quadtrees and their limit process")]
pub struct Cli {
    /// Master seed [default: 20120101]
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Worker threads; 0 uses every core
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

impl Cli {
    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Recurrence {
    /// Prefactor 2(bm + 1), as usually stated
    Published,
    /// Prefactor (bm + 1), consistent with the second moment equation
    Consistent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LimitMode {
    /// One sample path of Z_n on the grid, as CSV (s, z)
    Path,
    /// Replicate mean of the grid maximum of Z_n
    Sup,
    /// Replicate moments of Z_n at the given points
    Moments,
    /// Z_n against G applied to four independent copies of Z_{n-1}
    FixedPoint,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print every closed-form constant as JSON
    Constants {
        /// Also print the moment sequence c_1..c_M
        #[arg(long, default_value_t = 0)]
        moments: usize,
        /// Prefactor convention of the moment recurrence
        #[arg(long, value_enum, default_value_t = Recurrence::Consistent)]
        recurrence: Recurrence,
    },
    /// Build a small tree and print its nodes and a few query costs as JSON
    BuildDemo {
        /// Number of random points
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = TreeKind::Quadtree)]
        kind: TreeKind,
        /// Read points (CSV x,y) instead of drawing them
        #[arg(long)]
        points: Option<PathBuf>,
    },
    /// Partial match query costs in one random tree, as JSON
    Cost {
        /// Number of random points
        #[arg(long, default_value_t = 1000)]
        n: usize,
        /// Query lines (repeat or separate with commas)
        #[arg(long, required = true, value_delimiter = ',', num_args = 1..)]
        s: Vec<f64>,
        #[arg(long, default_value_t = TreeKind::Quadtree)]
        kind: TreeKind,
        /// Read points (CSV x,y) instead of drawing them
        #[arg(long)]
        points: Option<PathBuf>,
    },
    /// The whole cost profile s -> C_n(s) of one random tree, as CSV
    Profile {
        /// Number of random points
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = TreeKind::Quadtree)]
        kind: TreeKind,
        /// Read points (CSV x,y) instead of drawing them
        #[arg(long)]
        points: Option<PathBuf>,
        /// Write the CSV here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replicated cost experiment; summary CSV on standard output
    Experiment {
        /// TOML configuration; the remaining experiment flags are ignored when given
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = TreeKind::Quadtree)]
        kind: TreeKind,
        /// Tree sizes, strictly increasing
        #[arg(long, value_delimiter = ',', num_args = 1.., default_values_t = [1000u64, 10000])]
        n: Vec<u64>,
        /// Fixed query lines
        #[arg(long, value_delimiter = ',', num_args = 0.., default_values_t = [0.5])]
        s: Vec<f64>,
        #[arg(long, default_value_t = 200)]
        replicates: usize,
        /// Skip the query at a uniform random line
        #[arg(long)]
        no_uniform: bool,
        /// Record the profile integral and the worst query cost
        #[arg(long)]
        profile: bool,
        /// Use Poisson(n) many points
        #[arg(long)]
        poissonized: bool,
        /// Keep every replicate's observations in the JSON report
        #[arg(long)]
        keep_raw: bool,
        /// Write the summary CSV here instead of standard output
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Also write the full JSON report (cells, fits, config) here
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Simulate the limit process Z_n
    LimitSim {
        #[arg(long, value_enum, default_value_t = LimitMode::Path)]
        mode: LimitMode,
        /// Depth n of the martingale approximation
        #[arg(long, default_value_t = 12)]
        depth: u32,
        /// Grid size G (points j / G)
        #[arg(long, default_value_t = 1024)]
        grid: usize,
        /// Replicates (sup, moments and fixed-point modes)
        #[arg(long, default_value_t = 200)]
        replicates: usize,
        /// Query points for the moments mode
        #[arg(long, value_delimiter = ',', num_args = 1.., default_values_t = [0.1, 0.5, 0.9])]
        points: Vec<f64>,
        /// Maximum number of expanded boxes per sample path
        #[arg(long, default_value_t = DEFAULT_BOX_BUDGET)]
        budget: u64,
        /// Write the output here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve the second-moment integral equation by fixed-point iteration
    Mu2 {
        /// Stop when one step changes the solution by less than this
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Gauss-Legendre points per grid cell
        #[arg(long, default_value_t = 64)]
        nodes: usize,
        #[arg(long, default_value_t = 1024)]
        grid: usize,
        #[arg(long, default_value_t = 200)]
        max_iters: usize,
        /// Write the solution as CSV (s, mu2) here
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Experiment plus limit-process estimate, compared with the asymptotics
    Report {
        #[arg(long, value_delimiter = ',', num_args = 1.., default_values_t = [1000u64, 10000])]
        n: Vec<u64>,
        #[arg(long, value_delimiter = ',', num_args = 0.., default_values_t = [0.1, 0.25, 0.5])]
        s: Vec<f64>,
        #[arg(long, default_value_t = 500)]
        replicates: usize,
        /// Depth of Z_n used for the supremum reference
        #[arg(long, default_value_t = 10)]
        sup_depth: u32,
        #[arg(long, default_value_t = 512)]
        sup_grid: usize,
        #[arg(long, default_value_t = 200)]
        sup_replicates: usize,
    },
}

/// Parses `args` (program name first), runs the command and returns the
/// exit status.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    1
                }
            };
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Runs a parsed command, writing its data output to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let seed = cli.seed();
    match &cli.command {
        Command::Constants { moments, recurrence } => {
            #[derive(Serialize)]
            struct Doc {
                #[serde(flatten)]
                table: crate::analytic::ConstantsTable,
                beta_residual: f64,
                #[serde(skip_serializing_if = "Option::is_none")]
                moments: Option<MomentsDoc>,
            }
            #[derive(Serialize)]
            struct MomentsDoc {
                recurrence: RecurrenceForm,
                values: Vec<f64>,
            }
            let table = constants();
            let moments = if *moments > 0 {
                let form = match recurrence {
                    Recurrence::Published => RecurrenceForm::Published,
                    Recurrence::Consistent => RecurrenceForm::FixedPointConsistent,
                };
                Some(MomentsDoc { recurrence: form, values: moment_recurrence_with(*moments, form)?.values })
            } else {
                None
            };
            emit_json(out, &Doc { table, beta_residual: table.beta_residual(), moments })
        }
        Command::BuildDemo { n, kind, points } => {
            let pts = load_or_draw(points.as_deref(), *n, seed)?;
            let tree = SearchTree::build_seeded(&pts, *kind, seed)?;
            emit_json(out, &demo_doc(&tree, seed))
        }
        Command::Cost { n, s, kind, points } => {
            #[derive(Serialize)]
            struct Query {
                s: f64,
                cost: u64,
            }
            #[derive(Serialize)]
            struct Doc {
                kind: TreeKind,
                n: usize,
                seed: u64,
                queries: Vec<Query>,
            }
            if let Some(bad) = s.iter().find(|s| !(0.0..=1.0).contains(*s)) {
                return Err(Error::Domain(format!("query line {bad} is outside [0, 1]")));
            }
            let pts = load_or_draw(points.as_deref(), *n, seed)?;
            let tree = SearchTree::build_seeded(&pts, *kind, seed)?;
            let queries = s.iter().map(|&s| Query { s, cost: tree.partial_match_cost(s) }).collect();
            emit_json(out, &Doc { kind: *kind, n: tree.len(), seed, queries })
        }
        Command::Profile { n, kind, points, out: path } => {
            let pts = load_or_draw(points.as_deref(), *n, seed)?;
            let tree = SearchTree::build_seeded(&pts, *kind, seed)?;
            let mut buf = Vec::new();
            tree.cost_profile().write_csv(&mut buf)?;
            emit_bytes(out, path.as_deref(), &buf)
        }
        Command::Experiment {
            config,
            kind,
            n,
            s,
            replicates,
            no_uniform,
            profile,
            poissonized,
            keep_raw,
            csv,
            json,
        } => {
            let cfg = match config {
                Some(path) => {
                    let mut cfg = ExperimentConfig::from_file(path)?;
                    if let Some(seed) = cli.seed {
                        cfg.master_seed = seed;
                    }
                    cfg
                }
                None => ExperimentConfig {
                    kind: *kind,
                    n_values: n.clone(),
                    s_values: s.clone(),
                    uniform_query: !no_uniform,
                    replicates: *replicates,
                    master_seed: seed,
                    poissonized: *poissonized,
                    record_profile: *profile,
                    keep_raw: *keep_raw,
                    ..Default::default()
                },
            };
            let result = run_cost_experiment_with_threads(&cfg, cli.threads)?;
            if let Some(path) = json {
                std::fs::write(path, to_json(&result)? + "\n")?;
            }
            emit_bytes(out, csv.as_deref(), result.to_csv_string()?.as_bytes())
        }
        Command::LimitSim { mode, depth, grid, replicates, points, budget, out: path } => {
            let text = with_threads(cli.threads, || -> Result<Vec<u8>> {
                Ok(match mode {
                    LimitMode::Path => {
                        let z = simulate_zn(*depth, *grid, &replicate_splits(seed, 0), *budget)?;
                        let mut buf = Vec::new();
                        z.write_csv(&mut buf, "z")?;
                        buf
                    }
                    LimitMode::Sup => {
                        (to_json(&estimate_sup(*depth, *grid, *replicates, seed, *budget)?)? + "\n").into_bytes()
                    }
                    LimitMode::Moments => {
                        let mut pts = points.clone();
                        pts.sort_by(f64::total_cmp);
                        (to_json(&point_moments(*depth, &pts, *replicates, seed, *budget)?)? + "\n").into_bytes()
                    }
                    LimitMode::FixedPoint => {
                        #[derive(Serialize)]
                        struct Doc {
                            depth: u32,
                            grid_size: usize,
                            max_mean_discrepancy: f64,
                            max_mean_z: f64,
                            max_second_discrepancy: f64,
                            max_second_z: f64,
                        }
                        let c = fixed_point_residual_mc(*depth, *grid, *replicates, seed, *budget)?;
                        let doc = Doc {
                            depth: c.depth,
                            grid_size: c.grid_size,
                            max_mean_discrepancy: c.max_mean_discrepancy,
                            max_mean_z: c.max_mean_z,
                            max_second_discrepancy: c.max_second_discrepancy,
                            max_second_z: c.max_second_z,
                        };
                        (to_json(&doc)? + "\n").into_bytes()
                    }
                })
            })??;
            emit_bytes(out, path.as_deref(), &text)
        }
        Command::Mu2 { tol, nodes, grid, max_iters, csv } => {
            #[derive(Serialize)]
            struct Doc {
                c2: f64,
                iterations: usize,
                last_change: f64,
                residual: f64,
                analytic_residual: f64,
                distance_to_analytic: f64,
                observed_contraction: f64,
                predicted_contraction: f64,
                linear_part_norm: f64,
                grid_size: usize,
                nodes: usize,
                tolerance: f64,
            }
            let cfg = QuadratureConfig { nodes: *nodes, grid_size: *grid, tolerance: *tol, max_iters: *max_iters };
            let sol = solve_fixed_point(&cfg)?;
            if let Some(path) = csv {
                sol.solution.write_csv(std::fs::File::create(path)?, "mu2")?;
            }
            emit_json(
                out,
                &Doc {
                    c2: constants().c2,
                    iterations: sol.iterations,
                    last_change: sol.last_change,
                    residual: sol.residual,
                    analytic_residual: sol.analytic_residual,
                    distance_to_analytic: sol.distance_to_analytic,
                    observed_contraction: sol.observed_contraction(),
                    predicted_contraction: contraction_constant(),
                    linear_part_norm: linear_part_norm(),
                    grid_size: cfg.grid_size,
                    nodes: cfg.nodes,
                    tolerance: cfg.tolerance,
                },
            )
        }
        Command::Report { n, s, replicates, sup_depth, sup_grid, sup_replicates } => {
            let cfg = ExperimentConfig {
                n_values: n.clone(),
                s_values: s.clone(),
                replicates: *replicates,
                master_seed: seed,
                record_profile: true,
                ..Default::default()
            };
            let result = run_cost_experiment_with_threads(&cfg, cli.threads)?;
            let sup = with_threads(cli.threads, || {
                estimate_sup(*sup_depth, *sup_grid, *sup_replicates, seed, DEFAULT_BOX_BUDGET)
            })??;
            let k = constants();
            #[derive(Serialize)]
            struct Doc<'a> {
                constants: crate::analytic::ConstantsTable,
                experiment: &'a crate::experiments::ExperimentResult,
                sup_estimate: &'a crate::limit::SupEstimate,
                comparison: Vec<crate::experiments::TheoryRow>,
            }
            let comparison = compare_to_theory(&result, &k, Some(SupReference::from(&sup)));
            emit_json(out, &Doc { constants: k, experiment: &result, sup_estimate: &sup, comparison })
        }
    }
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    writeln!(out, "{}", to_json(value)?)?;
    Ok(())
}

fn emit_bytes(out: &mut dyn Write, path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes)?,
        None => out.write_all(bytes)?,
    }
    Ok(())
}

fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if threads == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

fn load_or_draw(path: Option<&Path>, n: usize, seed: u64) -> Result<Vec<Point>> {
    match path {
        Some(p) => read_points_file(p),
        None => Ok(sample_uniform_points(n, &mut replicate_stream(seed, tag::DEMO, 0, 0))),
    }
}

#[derive(Serialize)]
struct DemoNode {
    index: usize,
    x: f64,
    y: f64,
    depth: u32,
    x_lo: f64,
    x_hi: f64,
    y_lo: f64,
    y_hi: f64,
    children: Vec<usize>,
}

#[derive(Serialize)]
struct DemoDoc {
    kind: TreeKind,
    n: usize,
    seed: u64,
    height: u32,
    worst_cost: u64,
    worst_line: f64,
    profile_integral: f64,
    costs: Vec<(String, u64)>,
    nodes: Vec<DemoNode>,
}

fn demo_doc(tree: &SearchTree, seed: u64) -> DemoDoc {
    let profile = tree.cost_profile();
    let (worst_cost, worst_line) = profile.max();
    DemoDoc {
        kind: tree.kind(),
        n: tree.len(),
        seed,
        height: tree.height(),
        worst_cost,
        worst_line,
        profile_integral: profile.integral(),
        costs: [0.0, 0.25, 0.5, 0.75].iter().map(|&s| (fmt_sig(s), tree.partial_match_cost(s))).collect(),
        nodes: tree
            .nodes()
            .iter()
            .enumerate()
            .map(|(index, node)| DemoNode {
                index,
                x: node.point.x,
                y: node.point.y,
                depth: node.depth,
                x_lo: node.region.x_lo,
                x_hi: node.region.x_hi,
                y_lo: node.region.y_lo,
                y_hi: node.region.y_hi,
                children: node.children().collect(),
            })
            .collect(),
    }
}
