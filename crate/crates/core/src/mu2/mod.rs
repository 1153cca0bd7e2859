//! The second-moment function mu_2(s) = E[Z(s)^2] as the fixed point of an
//! integral operator K, solved by iteration on a grid.

mod interp;
mod quadrature;
mod solver;

pub use interp::WeightedInterpolant;
pub use quadrature::GaussLegendre;
pub use solver::{
    analytic_solution, apply_k, contraction_constant, inhomogeneous_coefficient, inhomogeneous_term, linear_part_norm, solve_fixed_point, KOperator,
    Mu2Solution, QuadratureConfig,
};
