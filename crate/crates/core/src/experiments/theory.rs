use serde::Serialize;

use super::run::{ExperimentResult, Query};
use crate::analytic::ConstantsTable;
use crate::limit::SupEstimate;
use crate::trees::TreeKind;

/// Monte Carlo estimate of E[max Z] to compare E[S_n] / n^b against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SupReference {
    pub mean: f64,
    pub std_err: f64,
}

impl From<&SupEstimate> for SupReference {
    fn from(e: &SupEstimate) -> Self {
        Self { mean: e.summary.mean, std_err: e.summary.std_err }
    }
}

/// Which asymptotic prediction a row checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    /// E[C_n(xi)] against kappa n^b - 1.
    MeanUniform,
    /// E[C_n(s)] against K1 h(s) n^b.
    MeanFixed,
    /// Var C_n(xi) against K4 n^2b.
    VarianceUniform,
    /// Var C_n(s) against (c2 - 1) (s(1-s))^b n^2b.
    VarianceFixedBare,
    /// Var C_n(s) against K1^2 (c2 - 1) (s(1-s))^b n^2b.
    VarianceFixedScaled,
    /// E[S_n] / n^b against K1 E[max Z].
    SupRatio,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoryRow {
    pub quantity: Quantity,
    pub n: u64,
    pub query: Query,
    pub observed: f64,
    pub predicted: f64,
    pub ratio: f64,
    /// (observed - predicted) / standard error of the observation.
    pub z: f64,
}

/// Observed-versus-predicted table for a quadtree experiment. Other tree
/// kinds have different constants and yield no rows.
pub fn compare_to_theory(result: &ExperimentResult, k: &ConstantsTable, sup: Option<SupReference>) -> Vec<TheoryRow> {
    if result.config.kind != TreeKind::Quadtree {
        return Vec::new();
    }
    let b = k.beta_exp;
    let row = |quantity, n, query, observed: f64, predicted: f64, se: f64| TheoryRow {
        quantity,
        n,
        query,
        observed,
        predicted,
        ratio: observed / predicted,
        z: (observed - predicted) / se,
    };
    let mut rows = Vec::new();
    for c in &result.cells {
        let nf = c.n as f64;
        let (nb, n2b) = (nf.powf(b), nf.powf(2.0 * b));
        let s = &c.summary;
        match c.query {
            Query::Uniform => {
                rows.push(row(Quantity::MeanUniform, c.n, c.query, s.mean, k.kappa * nb - 1.0, s.std_err));
                rows.push(row(Quantity::VarianceUniform, c.n, c.query, s.variance, k.k4 * n2b, s.variance_std_err));
            }
            Query::Fixed(x) if x > 0.0 && x < 1.0 => {
                let w = (x * (1.0 - x)).powf(b);
                rows.push(row(Quantity::MeanFixed, c.n, c.query, s.mean, k.mu1(x) * nb, s.std_err));
                let bare = (k.c2 - 1.0) * w * n2b;
                rows.push(row(Quantity::VarianceFixedBare, c.n, c.query, s.variance, bare, s.variance_std_err));
                rows.push(row(Quantity::VarianceFixedScaled, c.n, c.query, s.variance, k.k1 * k.k1 * bare, s.variance_std_err));
            }
            Query::Worst => {
                if let Some(r) = sup {
                    let se = (s.std_err / nb).hypot(k.k1 * r.std_err);
                    rows.push(row(Quantity::SupRatio, c.n, c.query, s.mean / nb, k.k1 * r.mean, se));
                }
            }
            _ => {}
        }
    }
    rows
}
