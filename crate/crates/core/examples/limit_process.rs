//! Sample paths of the limit process Z_n, its martingale mean and the
//! Monte Carlo estimate of E[max Z].

use partial_match::analytic::mean_curve;
use partial_match::limit::{estimate_sup, point_moments, replicate_splits, simulate_zn, DEFAULT_BOX_BUDGET};

fn main() -> partial_match::Result<()> {
    let seed = 2012;
    let z = simulate_zn(12, 1024, &replicate_splits(seed, 0), DEFAULT_BOX_BUDGET)?;
    let (j, max) = z.argmax();
    println!("one path of Z_12 on 1025 points: max {max:.4} at s = {:.4}, Z(1/2) = {:.4}", z.s(j), z.values()[512]);
    std::fs::write("limit_path.csv", {
        let mut buf = Vec::new();
        z.write_csv(&mut buf, "z")?;
        buf
    })?;
    println!("path written to limit_path.csv");

    let pts = [0.1, 0.5, 0.9];
    let m = point_moments(8, &pts, 20_000, seed, DEFAULT_BOX_BUDGET)?;
    for (i, s) in pts.iter().enumerate() {
        println!(
            "E[Z_8({s})] = {:.4} +- {:.4}   h({s}) = {:.4}",
            m.first[i].mean, m.first[i].std_err, mean_curve(*s)
        );
    }

    let started = std::time::Instant::now();
    let sup = estimate_sup(12, 1024, 50, seed, DEFAULT_BOX_BUDGET)?;
    println!(
        "E[max Z_12] = {:.4} +- {:.4} over {} paths ({:.1?})",
        sup.summary.mean, sup.summary.std_err, sup.summary.count, started.elapsed()
    );
    Ok(())
}
