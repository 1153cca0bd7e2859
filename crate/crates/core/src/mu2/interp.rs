/// Interpolation of grid values `f_0..f_G` on `[0, 1]` as
/// `f = l + r` with `l` the straight line through `(0, f_0)` and `(1, f_G)`.
/// The remainder `r`, which vanishes at both ends, is interpolated by a
/// monotone cubic in `r / w` with `w(t) = (t(1-t))^b`; the two end cells use
/// `r_1 w(t) / w(t_1)` and its mirror image. Both constants and multiples of
/// `w` are reproduced exactly.
#[derive(Debug, Clone)]
pub struct WeightedInterpolant {
    beta: f64,
    step: f64,
    ends: (f64, f64),
    /// remainder after the line
    f: Vec<f64>,
    /// f / w at the interior nodes (index 0 and G unused).
    g: Vec<f64>,
    /// dg/dt at the interior nodes.
    d: Vec<f64>,
}

impl WeightedInterpolant {
    /// Needs at least four cells.
    pub fn new(beta: f64, values: &[f64]) -> Self {
        let cells = values.len() - 1;
        assert!(cells >= 4, "weighted interpolation needs at least four cells");
        let step = 1.0 / cells as f64;
        let weight = |k: usize| weight(beta, k as f64 * step);
        let ends = (values[0], values[cells]);
        let values: Vec<f64> =
            values.iter().enumerate().map(|(k, v)| v - line(ends, k as f64 * step)).collect();
        let mut g = vec![0.0; cells + 1];
        for k in 1..cells {
            g[k] = values[k] / weight(k);
        }
        let slope: Vec<f64> = (0..cells).map(|k| if (1..cells - 1).contains(&k) { (g[k + 1] - g[k]) / step } else { 0.0 }).collect();
        let mut d = vec![0.0; cells + 1];
        for k in 2..cells - 1 {
            let (a, b) = (slope[k - 1], slope[k]);
            d[k] = if a * b <= 0.0 { 0.0 } else { 2.0 / (1.0 / a + 1.0 / b) };
        }
        d[1] = edge_derivative(slope[1], slope[2]);
        d[cells - 1] = edge_derivative(slope[cells - 2], slope[cells - 3]);
        Self { beta, step, ends, f: values, g, d }
    }

    pub fn cells(&self) -> usize {
        self.f.len() - 1
    }

    /// The straight-line part at `t`.
    #[inline]
    pub fn line(&self, t: f64) -> f64 {
        line(self.ends, t)
    }

    /// Coefficient of `w(t)` in the last cell: `f = line + c w` there.
    pub fn last_cell_coefficient(&self) -> f64 {
        let cells = self.cells();
        self.f[cells - 1] / weight(self.beta, 1.0 - self.step)
    }

    /// Value at `t` in cell `k`, i.e. `t` in `[k/G, (k+1)/G]`.
    #[inline]
    pub fn eval_in_cell(&self, k: usize, t: f64) -> f64 {
        self.line(t) + self.remainder_in_cell(k, t)
    }

    fn remainder_in_cell(&self, k: usize, t: f64) -> f64 {
        let cells = self.cells();
        let b = self.beta;
        if k == 0 {
            return self.f[1] * weight(b, t) / weight(b, self.step);
        }
        if k == cells - 1 {
            return self.last_cell_coefficient() * weight(b, t);
        }
        let tau = t / self.step - k as f64;
        let (t2, t3) = (tau * tau, tau * tau * tau);
        let g = (2.0 * t3 - 3.0 * t2 + 1.0) * self.g[k]
            + (t3 - 2.0 * t2 + tau) * self.step * self.d[k]
            + (3.0 * t2 - 2.0 * t3) * self.g[k + 1]
            + (t3 - t2) * self.step * self.d[k + 1];
        weight(b, t) * g
    }

    pub fn eval(&self, t: f64) -> f64 {
        let k = ((t / self.step) as usize).min(self.cells() - 1);
        self.eval_in_cell(k, t)
    }
}

#[inline]
fn line(ends: (f64, f64), t: f64) -> f64 {
    ends.0 + (ends.1 - ends.0) * t
}

#[inline]
pub(crate) fn weight(beta: f64, t: f64) -> f64 {
    (t * (1.0 - t)).powf(beta)
}

/// Three-point one-sided derivative, limited to keep monotonicity.
fn edge_derivative(near: f64, far: f64) -> f64 {
    let d = (3.0 * near - far) / 2.0;
    if d * near <= 0.0 {
        0.0
    } else if near * far < 0.0 && d.abs() > 3.0 * near.abs() {
        3.0 * near
    } else {
        d
    }
}
