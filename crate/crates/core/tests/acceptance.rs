//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so that every line is printed
//! in order. Exits non-zero if any criterion fails.

mod common;

use std::time::Instant;

use partial_match::analytic::{constants, mean_curve, moment_recurrence, ConstantsTable};
use partial_match::cli::main_with_args;
use partial_match::experiments::{run_cost_experiment, ExperimentConfig, ExperimentResult, Query};
use partial_match::limit::{estimate_sup, point_moments, second_moment_ratio_at_depth, DEFAULT_BOX_BUDGET};
use partial_match::mu2::{contraction_constant, solve_fixed_point, QuadratureConfig};
use partial_match::stats::Z95;

const PUBLISHED_K4: f64 = 0.447_363_034;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn main() {
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let k = constants();
    let mut failures = 0;
    let mut report = |id: u32, name: &str, started: Instant, o: Outcome| {
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {id:2} {verdict}  {name}: {} [{:.1?}]", o.detail, started.elapsed());
        if !o.pass {
            failures += 1;
        }
    };

    let t = Instant::now();
    report(1, "constants", t, criterion_constants(&k));

    let t = Instant::now();
    let grid = run_cost_experiment(&ExperimentConfig {
        n_values: (10..=16).map(|e| 1u64 << e).collect(),
        s_values: vec![0.0],
        uniform_query: true,
        record_profile: true,
        replicates: 2000,
        master_seed: 101,
        ..Default::default()
    })
    .expect("size-grid experiment");
    report(2, "mean at uniform query", t, criterion_uniform_mean(&k, &grid));
    report(4, "edge exponent", t, criterion_edge(&k, &grid));

    let t = Instant::now();
    let large = run_cost_experiment(&ExperimentConfig {
        n_values: vec![10_000, 100_000],
        s_values: vec![0.1, 0.25, 0.5],
        uniform_query: true,
        record_profile: true,
        replicates: 5000,
        master_seed: 202,
        ..Default::default()
    })
    .expect("large-n experiment");
    report(3, "mean at fixed s", t, criterion_fixed_mean(&k, &large));
    report(5, "variance at uniform query", t, criterion_uniform_variance(&k, &large));
    report(6, "fixed-s variance normalisation", t, criterion_fixed_variance(&k, &large));

    let t = Instant::now();
    report(7, "martingale mean of Z_n", t, criterion_martingale());
    let t = Instant::now();
    report(8, "second moment adjudication", t, criterion_second_moment(&k));
    let t = Instant::now();
    report(9, "mu2 solver", t, criterion_mu2());
    let t = Instant::now();
    report(10, "supremum", t, criterion_supremum(&k, &large));
    let t = Instant::now();
    report(11, "property suites", t, criterion_properties());
    let t = Instant::now();
    report(12, "determinism across thread counts", t, criterion_determinism());

    if failures > 0 {
        println!("{failures} criterion(s) failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}

fn criterion_constants(k: &ConstantsTable) -> Outcome {
    let d = (k.k4 - PUBLISHED_K4).abs();
    let r = k.beta_residual().abs();
    outcome(d < 5e-9 && r < 1e-12, format!("K4 = {:.12} (|diff| {d:.1e} < 5e-9), beta residual {r:.1e} < 1e-12", k.k4))
}

fn nb(k: &ConstantsTable, n: u64) -> f64 {
    (n as f64).powf(k.beta_exp)
}

fn criterion_uniform_mean(k: &ConstantsTable, res: &ExperimentResult) -> Outcome {
    // E[C_n(xi)] estimated per tree by the profile integral (the conditional
    // mean over xi); the fit of the direct single-line draws is shown too
    let pairs: Vec<(f64, f64)> = res
        .cells
        .iter()
        .filter(|c| c.query == Query::Integral)
        .map(|c| (c.n as f64, c.summary.mean + 1.0))
        .collect();
    let fit = partial_match::experiments::fit_exponent(&pairs).expect("fit");
    let direct = res.fit(Query::Uniform, true).expect("direct fit");
    let de = (fit.exponent - k.beta_exp).abs();
    let da = (fit.amplitude / k.kappa - 1.0).abs();
    outcome(
        de < 0.02 && da < 0.05,
        format!(
            "fit of mean+1 over n = 2^10..2^16: exponent {:.4} (beta {:.4} +- 0.02), amplitude {:.4} (kappa {:.4} +- 5%, off {:.2}%); single-line draws give exponent {:.4}, amplitude {:.4}",
            fit.exponent, k.beta_exp, fit.amplitude, k.kappa, 100.0 * da, direct.exponent, direct.amplitude
        ),
    )
}

fn criterion_edge(k: &ConstantsTable, res: &ExperimentResult) -> Outcome {
    let fit = res.fit(Query::Fixed(0.0), false).expect("edge fit");
    let d = (fit.exponent - k.edge_exp).abs();
    outcome(d < 0.04, format!("exponent at s = 0: {:.4} (sqrt2 - 1 = {:.4} +- 0.04)", fit.exponent, k.edge_exp))
}

fn criterion_fixed_mean(k: &ConstantsTable, res: &ExperimentResult) -> Outcome {
    let n = 100_000;
    let mut pass = true;
    let mut parts = Vec::new();
    for s in [0.1, 0.25, 0.5] {
        let c = res.cell(n, Query::Fixed(s)).expect("cell");
        let ratio = c.summary.mean / (k.mu1(s) * nb(k, n));
        pass &= (0.95..=1.05).contains(&ratio);
        parts.push(format!("s = {s}: {ratio:.4}"));
    }
    outcome(pass, format!("mean / (K1 h(s) n^beta) at n = 1e5, in [0.95, 1.05]: {}", parts.join(", ")))
}

fn criterion_uniform_variance(k: &ConstantsTable, res: &ExperimentResult) -> Outcome {
    let n = 100_000;
    let s = res.cell(n, Query::Uniform).expect("cell").summary;
    let scale = k.k4 * nb(k, n).powi(2);
    let ratio = s.variance / scale;
    outcome(
        (0.85..=1.15).contains(&ratio),
        format!(
            "Var C_n(xi) / (K4 n^2beta) at n = 1e5 = {ratio:.4} +- {:.4} (in [0.85, 1.15], {} replicates)",
            s.variance_std_err / scale,
            s.count
        ),
    )
}

fn criterion_fixed_variance(k: &ConstantsTable, res: &ExperimentResult) -> Outcome {
    let n = 100_000;
    let s = res.cell(n, Query::Fixed(0.5)).expect("cell").summary;
    let scale = 0.25_f64.powf(k.beta_exp) * nb(k, n).powi(2);
    let measured = s.variance / scale;
    let bare = k.c2 - 1.0;
    let scaled = k.k1 * k.k1 * bare;
    let within = |c: f64| (measured / c - 1.0).abs() <= 0.15;
    let verdict = match (within(bare), within(scaled)) {
        (false, true) => "K1^2 (c2 - 1) matches",
        (true, false) => "(c2 - 1) matches",
        (true, true) => "both match",
        (false, false) => "neither matches",
    };
    outcome(
        within(bare) != within(scaled),
        format!(
            "Var C_n(1/2) / ((1/4)^beta n^2beta) at n = 1e5 = {measured:.4} +- {:.4}; (c2 - 1) = {bare:.4} (ratio {:.3}), K1^2 (c2 - 1) = {scaled:.4} (ratio {:.3}); {verdict}",
            s.variance_std_err / scale,
            measured / bare,
            measured / scaled
        ),
    )
}

fn criterion_martingale() -> Outcome {
    let pts = [0.1, 0.5, 0.9];
    let mut worst: f64 = 0.0;
    for depth in [1, 4, 8] {
        let m = point_moments(depth, &pts, 10_000, 303 + u64::from(depth), DEFAULT_BOX_BUDGET).expect("moments");
        for (j, &s) in pts.iter().enumerate() {
            worst = worst.max(((m.first[j].mean - mean_curve(s)) / m.first[j].std_err).abs());
        }
    }
    outcome(worst < 4.0, format!("max |mean - h(s)| / stderr over n in {{1, 4, 8}}, s in {{0.1, 0.5, 0.9}}, 10^4 replicates: {worst:.2} < 4"))
}

fn criterion_second_moment(k: &ConstantsTable) -> Outcome {
    let m = point_moments(8, &[0.5], 100_000, 404, DEFAULT_BOX_BUDGET).expect("moments");
    let h2 = mean_curve(0.5).powi(2);
    let est = m.second[0].mean / h2;
    let half = Z95 * m.second[0].std_err / h2;
    let published = moment_recurrence(2).expect("recurrence").get(2).expect("c_2");
    let gap = (published - k.c2).abs();
    let nearer = if (est - k.c2).abs() < (est - published).abs() { "c2 of the integral equation" } else { "the published recurrence" };
    let exact = second_moment_ratio_at_depth(8);
    outcome(
        half < 0.2 * gap,
        format!(
            "E[(Z_8(1/2)/h)^2] = {est:.4} +- {half:.4} (95%); c2 = {:.4}, recurrence m=2 = {published:.4}, half-width/gap = {:.3} < 0.2; exact depth-8 value {exact:.4}; estimate agrees with {nearer}",
            k.c2,
            half / gap
        ),
    )
}

fn criterion_mu2() -> Outcome {
    let cfg = QuadratureConfig::default();
    match solve_fixed_point(&cfg) {
        Ok(sol) => {
            let ratio = sol.observed_contraction();
            let pass = sol.analytic_residual < 1e-6 && (ratio - 0.603).abs() < 0.02;
            outcome(
                pass,
                format!(
                    "converged from 0 in {} iterations (residual {:.1e}); |K(c2 h^2) - c2 h^2| = {:.1e} < 1e-6; contraction {ratio:.5} (0.603 +- 0.02, exact {:.5}); |f - c2 h^2| = {:.1e}",
                    sol.iterations,
                    sol.residual,
                    sol.analytic_residual,
                    contraction_constant(),
                    sol.distance_to_analytic
                ),
            )
        }
        Err(e) => outcome(false, format!("solver failed: {e}")),
    }
}

fn criterion_supremum(k: &ConstantsTable, res: &ExperimentResult) -> Outcome {
    let sup = estimate_sup(12, 1024, 300, 505, DEFAULT_BOX_BUDGET).expect("sup estimate");
    let reference = k.k1 * sup.summary.mean;
    let reference_se = k.k1 * sup.summary.std_err;
    let mut ratios = Vec::new();
    let mut parts = Vec::new();
    let mut consistent = true;
    for n in [10_000u64, 100_000] {
        let s = res.cell(n, Query::Worst).expect("cell").summary;
        let (r, se) = (s.mean / nb(k, n), s.std_err / nb(k, n));
        let z = (r - reference) / se.hypot(reference_se);
        consistent &= z.abs() <= 2.0;
        ratios.push(r);
        parts.push(format!("n = {n}: E[S_n]/n^beta = {r:.4} +- {se:.4} (z = {z:.2})"));
    }
    let drift = (ratios[1] / ratios[0] - 1.0).abs();
    outcome(
        drift <= 0.10 && consistent,
        format!(
            "{}; change across n {:.1}% (<= 10%); K1 E[max_grid Z_12] = {reference:.4} +- {reference_se:.4} (G = 1024, {} paths); |z| <= 2 required",
            parts.join(", "),
            100.0 * drift,
            sup.summary.count
        ),
    )
}

fn criterion_properties() -> Outcome {
    let seed = 606;
    let checks = [
        ("insertion monotonicity", common::insertion_monotonicity(seed, 300)),
        ("region-count oracle", common::oracle_equivalence(seed, 1000)),
        ("profile/pointwise", common::profile_pointwise(seed, 200)),
        ("double counting", common::double_counting(seed, 200)),
        ("uniform-query identity", common::uniform_query_identity(seed, 20, 4000, 4.0)),
        ("multinomial root split", common::multinomial_root_split(seed, 4000, 51, 0.3, 0.6)),
    ];
    let pass = checks.iter().all(|c| c.1.is_ok());
    let detail = checks
        .iter()
        .map(|(name, r)| match r {
            Ok(m) => format!("{name}: ok ({m})"),
            Err(m) => format!("{name}: FAILED ({m})"),
        })
        .collect::<Vec<_>>()
        .join("; ");
    outcome(pass, detail)
}

fn criterion_determinism() -> Outcome {
    let dir = tempfile::tempdir().expect("temp dir");
    let run = |threads: &str, tag: &str| {
        let json = dir.path().join(format!("{tag}.json"));
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let args = [
            "pmq", "experiment", "--n", "100,1000,5000", "--s", "0.3,0.5", "--replicates", "300", "--profile",
            "--seed", "42", "--threads", threads, "--json", json.to_str().expect("utf-8 path"),
        ];
        let code = main_with_args(args, &mut out, &mut err);
        (code, out, std::fs::read(json).unwrap_or_default())
    };
    let (c1, csv1, json1) = run("1", "one");
    let (c4, csv4, json4) = run("4", "four");
    let pass = c1 == 0 && c4 == 0 && csv1 == csv4 && json1 == json4 && !csv1.is_empty();
    outcome(
        pass,
        format!(
            "`experiment` with --threads 1 and --threads 4: CSV {} bytes {}, JSON {} bytes {}",
            csv1.len(),
            if csv1 == csv4 { "identical" } else { "DIFFER" },
            json1.len(),
            if json1 == json4 { "identical" } else { "DIFFER" }
        ),
    )
}
