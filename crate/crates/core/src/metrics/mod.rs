//! Distances between measures, the total-variation bounds, and sweeps that
//! check the bounds against exact model laws.

mod bounds;
mod distance;
mod report;

pub use bounds::{
    chen_stein_bound, corollary_bound, lecam_bound, theorem_a_bound, theorem_b_bound,
    theorem_c_bound, two_step_bound, BOUND_C, BOUND_D, TWO_STEP_COEFF,
};
pub use distance::{kolmogorov, total_variation};
pub use report::{
    residue_sup_distance, verify_bounds, BoundKind, BoundReport, VerifyOptions, CSV_HEADER,
};
