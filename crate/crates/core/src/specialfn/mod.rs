//! Probabilists' Hermite polynomials with the Cramér-type bounds, and the
//! complex log-gamma function with the gamma-ratio estimate.

mod gamma;
mod hermite;

pub use gamma::{complex_log_gamma, gamma_ratio_bound_constant, gamma_ratio_margin, gauss_legendre_16};
pub use hermite::{
    cramer_bound_margin, hermite, hermite_explicit, hermite_multiplication, hermite_table,
    HERMITE_EXPLICIT_MAX_DEGREE,
};
