//! Mean and variance of the cost of a partial match query at a uniform
//! random line, with a power-law fit of the shifted mean and the comparison
//! against the asymptotic constants.

use partial_match::analytic::constants;
use partial_match::experiments::{compare_to_theory, run_cost_experiment, ExperimentConfig, Query};

fn main() -> partial_match::Result<()> {
    let cfg = ExperimentConfig {
        n_values: (8..=14).map(|e| 1u64 << e).collect(),
        s_values: vec![0.5],
        replicates: 400,
        ..Default::default()
    };
    let started = std::time::Instant::now();
    let res = run_cost_experiment(&cfg)?;
    print!("{}", res.to_csv_string()?);
    let k = constants();
    if let Some(fit) = res.fit(Query::Uniform, true) {
        println!(
            "\nmean + 1 ~ {:.4} n^{:.4}  (kappa = {:.4}, beta = {:.4}, r^2 = {:.5})",
            fit.amplitude, fit.exponent, k.kappa, k.beta_exp, fit.r_squared
        );
    }
    println!("\n{:<22} {:>7} {:>6} {:>14} {:>14} {:>8} {:>7}", "quantity", "n", "query", "observed", "predicted", "ratio", "z");
    for r in compare_to_theory(&res, &k, None) {
        println!(
            "{:<22} {:>7} {:>6} {:>14.4} {:>14.4} {:>8.4} {:>7.2}",
            format!("{:?}", r.quantity), r.n, r.query.to_string(), r.observed, r.predicted, r.ratio, r.z
        );
    }
    eprintln!("\n{:.1?} elapsed", started.elapsed());
    Ok(())
}
