use serde::Serialize;

use super::special::{beta_fn, gamma_fn};

/// The partial match exponent (sqrt(17) - 3) / 2, the root in (0, 1) of
/// b^2 + 3b - 2 = 0.
pub fn beta_exp() -> f64 {
    (17.0_f64.sqrt() - 3.0) / 2.0
}

/// Every closed-form constant of the quadtree partial match asymptotics,
/// derived from the exponent at construction time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstantsTable {
    /// Growth exponent of the cost.
    pub beta_exp: f64,
    /// Leading constant of the mean cost at a uniform query line.
    pub kappa: f64,
    /// Leading constant of the mean cost at a fixed query line.
    pub k1: f64,
    /// Second moment ratio E[Z(s)^2] / h(s)^2 of the limit process.
    pub c2: f64,
    /// Leading constant of the variance at a uniform query line.
    pub k4: f64,
    /// Var Z(xi) for a uniform xi.
    pub var_z_xi: f64,
    /// Exponent of the mean cost along the edge, sqrt(2) - 1.
    pub edge_exp: f64,
}

impl ConstantsTable {
    pub fn compute() -> Self {
        let b = beta_exp();
        // every argument below is positive, so the Gamma/Beta calls cannot fail
        let g = |x: f64| gamma_fn(x).expect("positive argument");
        let bb = |x: f64, y: f64| beta_fn(x, y).expect("positive arguments");

        let kappa = g(2.0 * b + 2.0) / (2.0 * g(b + 1.0).powi(3));
        let k1 = g(2.0 * b + 2.0) * g(b + 2.0) / (2.0 * g(b + 1.0).powi(3) * g(b / 2.0 + 1.0).powi(2));
        let beta_bb = bb(b + 1.0, b + 1.0);
        let c2 = 2.0 * beta_bb * (2.0 * b + 1.0) / (3.0 * (1.0 - b));
        let var_z_xi = c2 * beta_bb - bb(b / 2.0 + 1.0, b / 2.0 + 1.0).powi(2);
        Self {
            beta_exp: b,
            kappa,
            k1,
            c2,
            k4: k1 * k1 * var_z_xi,
            var_z_xi,
            edge_exp: 2.0_f64.sqrt() - 1.0,
        }
    }

    /// Residual of b^2 + 3b - 2 at the stored exponent.
    pub fn beta_residual(&self) -> f64 {
        let b = self.beta_exp;
        b * b + 3.0 * b - 2.0
    }

    /// Mean shape h(s) = (s(1-s))^(b/2).
    pub fn mean_curve(&self, s: f64) -> f64 {
        mean_curve_with(self.beta_exp, s)
    }

    /// First moment limit mu_1(s) = K1 h(s).
    pub fn mu1(&self, s: f64) -> f64 {
        self.k1 * self.mean_curve(s)
    }

    /// The Beta integral B(b+1, b+1) that appears throughout the second moment.
    pub fn beta_bb(&self) -> f64 {
        beta_fn(self.beta_exp + 1.0, self.beta_exp + 1.0).expect("positive arguments")
    }
}

/// Shorthand for [`ConstantsTable::compute`].
pub fn constants() -> ConstantsTable {
    ConstantsTable::compute()
}

/// h(s) = (s(1-s))^(b/2) for the partial match exponent b. Zero at both ends.
pub fn mean_curve(s: f64) -> f64 {
    mean_curve_with(beta_exp(), s)
}

#[inline]
pub(crate) fn mean_curve_with(beta: f64, s: f64) -> f64 {
    let p = s * (1.0 - s);
    if p <= 0.0 {
        0.0
    } else {
        p.powf(beta / 2.0)
    }
}
