//! Signed approximation schemes built on the Poisson law.
//!
//! The scheme of order `r` for a rate `λ` and residue coefficients
//! `b_1..b_r` is the signed measure with generating function
//! `e^{λ(w−1)} (1 + Σ_s b_s (w − 1)^s)`.

mod measure;
mod poisson;
mod positive;
mod scheme;

pub use measure::SignedMeasure;
pub use poisson::{poisson_pmf, POISSON_MASS_CUTOFF, POISSON_TAIL_CUTOFF};
pub use positive::{expect_via_scheme, rectify_positive};
pub use scheme::{
    charlier_delta, derived_scheme, scheme_from_alphabet, scheme_measure, scheme_shift_coeffs,
    second_order_closed_form,
};
