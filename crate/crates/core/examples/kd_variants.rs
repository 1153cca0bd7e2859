//! Growth exponents of the mean partial match cost in quadtrees, 2-d trees
//! and relaxed 2-d trees.

use partial_match::experiments::{run_cost_experiment, ExperimentConfig, Query};
use partial_match::trees::TreeKind;

fn main() -> partial_match::Result<()> {
    for kind in TreeKind::ALL {
        let cfg = ExperimentConfig {
            kind,
            n_values: (9..=14).map(|e| 1u64 << e).collect(),
            s_values: vec![],
            uniform_query: false,
            record_profile: true,
            replicates: 300,
            ..Default::default()
        };
        let res = run_cost_experiment(&cfg)?;
        let fit = res.fit(Query::Integral, false).expect("six sizes");
        let worst = res.fit(Query::Worst, false).expect("six sizes");
        println!(
            "{kind:<11} mean ~ {:.3} n^{:.4} (+- {:.4}), worst query ~ n^{:.4}",
            fit.amplitude, fit.exponent, fit.exponent_se, worst.exponent
        );
    }
    println!("reference: (sqrt(17) - 3)/2 = {:.4}, relaxed 2-d trees {:.4}", (17f64.sqrt() - 3.0) / 2.0, 5f64.sqrt() / 2.0 - 0.5);
    Ok(())
}
