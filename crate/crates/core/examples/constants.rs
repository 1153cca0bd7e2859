//! Every closed-form constant, and the two conventions of the moment
//! recurrence side by side.

use partial_match::analytic::{constants, moment_recurrence_with, RecurrenceForm};

fn main() -> partial_match::Result<()> {
    let k = constants();
    println!("beta      = {:.15}  (residual of b^2 + 3b - 2: {:.1e})", k.beta_exp, k.beta_residual());
    println!("kappa     = {:.15}", k.kappa);
    println!("K1        = {:.15}", k.k1);
    println!("c2        = {:.15}", k.c2);
    println!("Var Z(xi) = {:.15}", k.var_z_xi);
    println!("K4        = {:.15}", k.k4);
    println!("edge exp  = {:.15}", k.edge_exp);
    println!("h(1/2)    = {:.15}", k.mean_curve(0.5));

    let published = moment_recurrence_with(8, RecurrenceForm::Published)?;
    let consistent = moment_recurrence_with(8, RecurrenceForm::FixedPointConsistent)?;
    println!("\n m   published      consistent");
    for m in 1..=8 {
        println!("{m:2}   {:<14.6} {:<14.6}", published.get(m).unwrap(), consistent.get(m).unwrap());
    }
    Ok(())
}
