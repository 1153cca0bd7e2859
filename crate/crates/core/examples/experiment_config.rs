//! Runs an experiment described by a TOML file and writes its CSV summary
//! and JSON report.
//!
//! cargo run --release --example experiment_config -- examples/configs/quick.toml

use partial_match::experiments::{run_cost_experiment, ExperimentConfig};
use partial_match::output::to_json;

fn main() -> partial_match::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/configs/quick.toml").into());
    let cfg = ExperimentConfig::from_file(&path)?;
    let res = run_cost_experiment(&cfg)?;
    print!("{}", res.to_csv_string()?);
    std::fs::write("experiment_report.json", to_json(&res)? + "\n")?;
    eprintln!("full report in experiment_report.json");
    Ok(())
}
