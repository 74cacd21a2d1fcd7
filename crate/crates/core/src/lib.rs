//! Signed Poisson approximation schemes for mod-Poisson convergent integer
//! random variables.
//!
//! The crate computes exact laws for sums of Bernoulli variables, cycle counts
//! of weighted random permutations, irreducible-factor counts of random
//! polynomials over finite fields and prime-factor counts of integers. It
//! builds the signed approximating measures of any order from the residue
//! coefficients of an alphabet, measures total-variation distances, and
//! checks them against explicit bounds.

pub mod arith;
pub mod error;
pub mod io;
pub mod metrics;
pub mod models;
pub mod oracle;
pub mod scalar;
pub mod schemes;
pub mod specialfn;
pub mod suites;
pub mod symfunc;
pub mod zeta;

pub use error::{Error, Result};

/// Floating-point probability mass function.
pub type Pmf64 = models::Pmf<f64>;
/// Exact rational probability mass function.
pub type ExactPmf = models::Pmf<num_rational::BigRational>;
pub type SignedMeasure64 = schemes::SignedMeasure<f64>;
pub type ResidueCoeffs64 = symfunc::ResidueCoeffs<f64>;
pub type PowerSums64 = symfunc::PowerSums<f64>;
