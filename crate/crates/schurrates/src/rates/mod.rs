//! Information projections onto marginal polytopes and the closed forms for the growth
//! exponents `Θ`, `Θ₁`, `Θ₂` and the rate `Δ_A` (`d = 2`).
//!
//! Growth exponents `g = lim (1/n) log₂ t_n` are the primitive; every rate is `−g`.

mod delta;
mod golden;
mod iproj;
mod theta;
mod tuples;

pub use delta::{
    dbar, delta_a_closed, delta_a_paper_literal, delta_a_proof_literal, lambda_rate_d2, phi_rate_d2, DbarValue,
    DeltaValue,
};
pub use golden::golden_section;
pub use iproj::{i_projection, weighted_i_projection, IProjection, MarginalConstraint, WeightedAtom};
pub use theta::{
    theta1, theta2, theta_growth, theta_growth_d2, theta_minimizer_location, RateValue, Theta1Value, ThetaGrowth,
};
pub use tuples::{
    cauchy_binet_check, norm_estimate_check, p_k_distribution, p_k_distribution_scaled, CauchyBinet,
    NormEstimate, TupleDistribution,
};
pub(crate) use tuples::cauchy_binet_check_scaled;
