//! Specialisations of symmetric functions.
//!
//! An alphabet `A = {a_1, a_2, ...}` of weights specialises the power sums
//! `p_k(A) = Σ a_i^k`. Setting `p_1 = 0` and keeping the higher power sums gives
//! the *virtual alphabet* `A'`, whose elementary symmetric functions `e_s(A')`
//! are the coefficients of the residue `Π (1 + a_i z) e^{-a_i z}` in powers of
//! `z = w - 1`.

mod alphabet;
mod newton;
mod residue;

pub use alphabet::{power_sums_finite, power_sums_infinite, Alphabet, AlphabetKind};
pub use newton::{
    elementary_from_power, moments_from_elementary, power_from_elementary,
    stirling2_elementary_bridge, virtual_residue_coeffs,
};
pub use residue::{residue_product_eval, residue_series_eval, ResidueProduct};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::scalar::Scalar;

/// Power sums `p_1..p_K` of an alphabet.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerSums<T> {
    values: Vec<T>,
}

impl<T: Scalar> PowerSums<T> {
    /// Wraps `p_1..p_K`; requires `K >= 2`.
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.len() < 2 {
            return invalid(format!(
                "power sums need kmax >= 2, got {}",
                values.len()
            ));
        }
        Ok(Self { values })
    }

    /// `p_k` for `1 <= k <= kmax`.
    pub fn get(&self, k: usize) -> &T {
        &self.values[k - 1]
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn kmax(&self) -> usize {
        self.values.len()
    }

    /// `σ² = p_2`.
    pub fn sigma2(&self) -> T {
        self.values[1].clone()
    }

    /// Same power sums with `p_1` replaced by zero (the virtual alphabet).
    pub fn virtual_alphabet(&self) -> Self {
        let mut values = self.values.clone();
        values[0] = T::zero();
        Self { values }
    }
}

/// Poisson rate together with the residue coefficients `b_1..b_r`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidueCoeffs<T> {
    pub lambda: T,
    b: Vec<T>,
}

impl<T: Scalar> ResidueCoeffs<T> {
    /// `b` holds `b_1..b_r`. The rate must be positive.
    pub fn new(lambda: T, b: Vec<T>) -> Result<Self> {
        if !(lambda > T::zero()) {
            return invalid(format!("Poisson rate must be positive, got {lambda:?}"));
        }
        Ok(Self { lambda, b })
    }

    /// The pure Poisson scheme (`r = 0`).
    pub fn poisson(lambda: T) -> Result<Self> {
        Self::new(lambda, Vec::new())
    }

    pub fn order(&self) -> usize {
        self.b.len()
    }

    /// `b_s`, with `b_0 = 1` and `b_s = 0` beyond the order.
    pub fn coeff(&self, s: usize) -> T {
        match s {
            0 => T::one(),
            s if s <= self.b.len() => self.b[s - 1].clone(),
            _ => T::zero(),
        }
    }

    /// `b_1..b_r`.
    pub fn b(&self) -> &[T] {
        &self.b
    }

    /// Truncation to order `r` (no-op when `r` exceeds the order).
    pub fn truncated(&self, r: usize) -> Self {
        Self {
            lambda: self.lambda.clone(),
            b: self.b.iter().take(r).cloned().collect(),
        }
    }

    pub fn with_lambda(&self, lambda: T) -> Result<Self> {
        Self::new(lambda, self.b.clone())
    }
}
