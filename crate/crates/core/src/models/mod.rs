//! Exact laws of the model families and their mod-Poisson parameters.

mod bernoulli;
mod fq;
mod omega;
mod params;
mod perm;
mod pmf;
mod spec;

pub use bernoulli::{bernoulli_sum_pmf, bernoulli_sum_pmf_trimmed};
pub use fq::{fq_factor_counts, fq_factor_pmf};
pub use omega::{omega_counts, omega_pmf, omega_pmf_with_budget, omega_table, DEFAULT_SIEVE_BUDGET};
pub use params::{gamma_theta, r_q, EULER_GAMMA};
pub use perm::{
    ewens_cycle_pmf, ewens_normalization, ewens_weights, weighted_perm_cycle_pmf,
    weighted_perm_normalization, weighted_perm_polynomial,
};
pub use pmf::{MassFunction, Pmf};
pub use spec::{
    empirical_residue, empirical_residue_coeffs, model_lambda, ModelSpec, Singularity,
};
pub use crate::arith::gauss_irreducible_count;
