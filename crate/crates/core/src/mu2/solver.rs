use serde::{Deserialize, Serialize};

use super::interp::{weight, WeightedInterpolant};
use super::quadrature::GaussLegendre;
use crate::analytic::{beta_exp, beta_fn, constants};
use crate::error::{Error, Result};
use crate::grid::GridFunction;

/// Discretisation of K and stopping rule of the iteration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureConfig {
    /// Gauss–Legendre points per grid cell.
    pub nodes: usize,
    pub grid_size: usize,
    /// Stop once the sup-norm change of one step is below this.
    pub tolerance: f64,
    pub max_iters: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self { nodes: 64, grid_size: 1024, tolerance: 1e-8, max_iters: 200 }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if self.nodes < 4 {
            return Err(Error::Config(format!("nodes must be at least 4, got {}", self.nodes)));
        }
        if self.grid_size < 4 {
            return Err(Error::Config(format!("grid_size must be at least 4, got {}", self.grid_size)));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::Config(format!("tolerance must be positive, got {}", self.tolerance)));
        }
        if self.max_iters == 0 {
            return Err(Error::Config("max_iters must be at least 1".into()));
        }
        Ok(())
    }
}

/// `2 B(b+1, b+1) / (b+1)`, the coefficient of `(s(1-s))^b` in K.
pub fn inhomogeneous_coefficient() -> f64 {
    let b = beta_exp();
    2.0 * beta_fn(b + 1.0, b + 1.0).expect("positive arguments") / (b + 1.0)
}

/// The inhomogeneous term of K at `s`.
pub fn inhomogeneous_term(s: f64) -> f64 {
    inhomogeneous_coefficient() * weight(beta_exp(), s)
}

/// Factor by which the linear part of K scales `(s(1-s))^b`:
/// `2 / ((2b+1)(b+1))`.
pub fn contraction_constant() -> f64 {
    let b = beta_exp();
    2.0 / ((2.0 * b + 1.0) * (b + 1.0))
}

/// Sup-norm operator norm of the linear part of K, attained by constants:
/// `4 (1 - 2^(-2b-1)) / (2b+1)^2`.
pub fn linear_part_norm() -> f64 {
    let p = 2.0 * beta_exp() + 1.0;
    4.0 * (1.0 - 2.0_f64.powf(-p)) / (p * p)
}

/// c_2 (s(1-s))^b on the grid.
pub fn analytic_solution(grid_size: usize) -> GridFunction {
    let (b, c2) = (beta_exp(), constants().c2);
    GridFunction::from_fn(grid_size, |s| c2 * weight(b, s))
}

/// The discretised operator
/// `Kf(s) = 2/(2b+1) [s^(2b+1) J(s) + (1-s)^(2b+1) J(1-s)] + a (s(1-s))^b`
/// with `J(u) = int_u^1 t^(-2b-2) f(t) dt`, which is the integral form after
/// substituting `t = s/x` and `t = (1-s)/(1-x)`.
#[derive(Debug, Clone)]
pub struct KOperator {
    beta: f64,
    inhomogeneous: f64,
    rule: GaussLegendre,
}

impl KOperator {
    pub fn new(nodes: usize) -> Self {
        Self { beta: beta_exp(), inhomogeneous: inhomogeneous_coefficient(), rule: GaussLegendre::new(nodes) }
    }

    pub fn apply(&self, f: &GridFunction) -> Result<GridFunction> {
        let cells = f.grid_size();
        if cells < 4 {
            return Err(Error::Domain("K needs a grid of at least four cells".into()));
        }
        let b = self.beta;
        let p = 2.0 * b + 1.0;
        let step = 1.0 / cells as f64;
        let vals = f.values();
        let interp = WeightedInterpolant::new(b, vals);

        // tail[k] = J(k / G)
        let mut tail = vec![0.0; cells + 1];
        tail[cells - 1] = self.last_cell(&interp, step);
        for k in (1..cells - 1).rev() {
            let (lo, hi) = (k as f64 * step, (k + 1) as f64 * step);
            let cell: f64 = self.rule.mapped(lo, hi).map(|(t, w)| w * t.powf(-p - 1.0) * interp.eval_in_cell(k, t)).sum();
            tail[k] = tail[k + 1] + cell;
        }

        let edge = 2.0 * vals[0] / (p * p);
        let mut out = vec![0.0; cells + 1];
        out[0] = edge;
        out[cells] = edge;
        for j in 1..cells {
            let (s, r) = (j as f64 * step, (cells - j) as f64 * step);
            out[j] = 2.0 / p * (s.powf(p) * tail[j] + r.powf(p) * tail[cells - j]) + self.inhomogeneous * weight(b, s);
        }
        GridFunction::new(out)
    }

    /// J over the last cell `[1 - d, 1]`, where f is a line plus `c w(t)`.
    /// The line part is smooth; the `(1-t)^b` part uses
    /// `1 - t = d y^(1/(b+1))`, which removes the endpoint singularity.
    fn last_cell(&self, interp: &WeightedInterpolant, d: f64) -> f64 {
        let b = self.beta;
        let p = 2.0 * b + 1.0;
        let smooth = self.rule.integrate(1.0 - d, 1.0, |t| t.powf(-p - 1.0) * interp.line(t));
        let e = 1.0 / (b + 1.0);
        let singular = d.powf(b + 1.0) / (b + 1.0)
            * self.rule.integrate(0.0, 1.0, |y| (1.0 - d * y.powf(e)).powf(-b - 2.0));
        smooth + interp.last_cell_coefficient() * singular
    }
}

/// K with the default 64-point rule per cell.
pub fn apply_k(f: &GridFunction) -> Result<GridFunction> {
    KOperator::new(QuadratureConfig::default().nodes).apply(f)
}

/// Outcome of the fixed-point iteration.
#[derive(Debug, Clone, Serialize)]
pub struct Mu2Solution {
    pub solution: GridFunction,
    pub iterations: usize,
    /// Sup-norm change of the last step.
    pub last_change: f64,
    /// `||K f - f||` at the returned f.
    pub residual: f64,
    /// Ratio of successive sup-norm changes, one per step after the first.
    pub contraction_ratios: Vec<f64>,
    /// `||f - c_2 (s(1-s))^b||`.
    pub distance_to_analytic: f64,
    /// `||K(c_2 h^2) - c_2 h^2||` on the same grid.
    pub analytic_residual: f64,
}

impl Mu2Solution {
    /// Geometric mean of the recorded contraction ratios.
    pub fn observed_contraction(&self) -> f64 {
        let r = &self.contraction_ratios;
        if r.is_empty() {
            return f64::NAN;
        }
        (r.iter().map(|x| x.ln()).sum::<f64>() / r.len() as f64).exp()
    }
}

/// Iterates `f <- K f` from `f = 0` until one step changes f by less than
/// the tolerance.
pub fn solve_fixed_point(config: &QuadratureConfig) -> Result<Mu2Solution> {
    config.validate()?;
    let k = KOperator::new(config.nodes);
    let mut f = GridFunction::zeros(config.grid_size);
    let mut ratios = Vec::new();
    let mut prev_change = f64::NAN;
    for iteration in 1..=config.max_iters {
        let next = k.apply(&f)?;
        let change = next.sup_distance(&f);
        if prev_change.is_finite() && prev_change > 0.0 {
            ratios.push(change / prev_change);
        }
        prev_change = change;
        f = next;
        if change < config.tolerance {
            let residual = k.apply(&f)?.sup_distance(&f);
            let analytic = analytic_solution(config.grid_size);
            let analytic_residual = k.apply(&analytic)?.sup_distance(&analytic);
            return Ok(Mu2Solution {
                distance_to_analytic: f.sup_distance(&analytic),
                solution: f,
                iterations: iteration,
                last_change: change,
                residual,
                contraction_ratios: ratios,
                analytic_residual,
            });
        }
    }
    Err(Error::NoConvergence { iterations: config.max_iters, last_change: prev_change })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::replicate_stream;
    use rand::Rng;

    fn small() -> QuadratureConfig {
        QuadratureConfig { nodes: 64, grid_size: 512, ..Default::default() }
    }

    #[test]
    fn zero_maps_to_inhomogeneous_term() {
        let kf = apply_k(&GridFunction::zeros(64)).unwrap();
        for (j, v) in kf.values().iter().enumerate() {
            assert_eq!(*v, inhomogeneous_term(j as f64 / 64.0));
        }
    }

    #[test]
    fn analytic_solution_is_a_fixed_point() {
        let f = analytic_solution(512);
        let kf = apply_k(&f).unwrap();
        assert!(kf.sup_distance(&f) < 1e-6, "{}", kf.sup_distance(&f));
    }

    #[test]
    fn scaled_weight_contracts_by_rho() {
        let b = beta_exp();
        let w = GridFunction::from_fn(256, |s| weight(b, s));
        let lw = apply_k(&w).unwrap();
        let rho = contraction_constant();
        for (j, (l, x)) in lw.values().iter().zip(w.values()).enumerate() {
            let expected = rho * x + inhomogeneous_term(j as f64 / 256.0);
            assert!((l - expected).abs() < 1e-10, "j = {j}");
        }
        assert!((rho - 0.603_26).abs() < 1e-5);
    }

    #[test]
    fn constant_input_against_closed_form() {
        // f = 1: Kf(s) = 2/p^2 (2 - s^p - (1-s)^p) + a w(s), p = 2b + 1
        let b = beta_exp();
        let p = 2.0 * b + 1.0;
        let kf = apply_k(&GridFunction::from_fn(512, |_| 1.0)).unwrap();
        assert!((kf.values()[0] - 2.0 / (p * p)).abs() < 1e-15);
        assert_eq!(kf.values()[0], kf.values()[512]);
        for (j, v) in kf.values().iter().enumerate() {
            let s = j as f64 / 512.0;
            let exact = 2.0 / (p * p) * (2.0 - s.powf(p) - (1.0 - s).powf(p)) + inhomogeneous_term(s);
            assert!((v - exact).abs() < 1e-12, "s = {s}: {v} vs {exact}");
        }
    }

    #[test]
    fn solver_converges_to_the_closed_form() {
        let cfg = small();
        let sol = solve_fixed_point(&cfg).unwrap();
        assert!(sol.residual < 1e-6);
        assert!(sol.distance_to_analytic < 10.0 * cfg.tolerance, "{}", sol.distance_to_analytic);
        assert!((sol.observed_contraction() - 0.603).abs() < 0.02);
        assert!((30..=40).contains(&sol.iterations), "{}", sol.iterations);
        let v = sol.solution.values();
        for j in 0..v.len() {
            assert!((v[j] - v[v.len() - 1 - j]).abs() < 1e-8);
        }
    }

    #[test]
    fn lipschitz_on_random_pairs() {
        let k = KOperator::new(32);
        let mut rng = replicate_stream(41, 0, 0, 0);
        for _ in 0..20 {
            let f = GridFunction::new((0..=256).map(|_| rng.random::<f64>()).collect()).unwrap();
            let g = GridFunction::new((0..=256).map(|_| rng.random::<f64>()).collect()).unwrap();
            let ratio = k.apply(&f).unwrap().sup_distance(&k.apply(&g).unwrap()) / f.sup_distance(&g);
            assert!(ratio <= 0.61, "{ratio}");
        }
    }

    #[test]
    fn constants_attain_the_operator_norm() {
        // the difference of two constants is the worst case, above 0.61
        let k = KOperator::new(32);
        let f = GridFunction::from_fn(512, |_| 1.0);
        let diff = k.apply(&f).unwrap().sup_distance(&k.apply(&GridFunction::zeros(512)).unwrap());
        assert!((diff - linear_part_norm()).abs() < 1e-3, "{diff}");
        assert!((linear_part_norm() - 0.6837).abs() < 1e-4);
    }

    #[test]
    fn config_validation() {
        assert!(QuadratureConfig { nodes: 3, ..Default::default() }.validate().is_err());
        assert!(QuadratureConfig { tolerance: 0.0, ..Default::default() }.validate().is_err());
        assert!(matches!(
            solve_fixed_point(&QuadratureConfig { max_iters: 3, ..small() }),
            Err(Error::NoConvergence { iterations: 3, .. })
        ));
    }
}
