//! Solves the second-moment equation by iteration and compares the result
//! with c_2 (s(1-s))^b.

use partial_match::analytic::constants;
use partial_match::mu2::{contraction_constant, linear_part_norm, solve_fixed_point, QuadratureConfig};

fn main() -> partial_match::Result<()> {
    let cfg = QuadratureConfig::default();
    let sol = solve_fixed_point(&cfg)?;
    println!("grid {} cells, {} Gauss-Legendre points per cell", cfg.grid_size, cfg.nodes);
    println!("iterations            {}", sol.iterations);
    println!("last change           {:.3e}", sol.last_change);
    println!("residual |Kf - f|     {:.3e}", sol.residual);
    println!("|f - c2 h^2|          {:.3e}", sol.distance_to_analytic);
    println!("|K(c2 h^2) - c2 h^2|  {:.3e}", sol.analytic_residual);
    println!("observed contraction  {:.6} (predicted {:.6})", sol.observed_contraction(), contraction_constant());
    println!("sup-norm of linear K  {:.6}", linear_part_norm());
    let mid = cfg.grid_size / 2;
    println!("mu2(1/2) = {:.12}, c2 h(1/2)^2 = {:.12}", sol.solution.values()[mid], constants().c2 * 0.25_f64.powf(constants().beta_exp));
    Ok(())
}
