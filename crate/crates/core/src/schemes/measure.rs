use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::models::{MassFunction, Pmf};
use crate::scalar::Scalar;

/// A real-valued measure on ℕ of total mass one, stored over a finite window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignedMeasure<T> {
    offset: usize,
    masses: Vec<T>,
    #[serde(default)]
    truncated: f64,
}

impl<T: Scalar> SignedMeasure<T> {
    /// Checks `|Σ masses − 1| <= truncated + tolerance`.
    pub fn new(offset: usize, masses: Vec<T>, truncated: f64) -> Result<Self> {
        if masses.is_empty() {
            return invalid("a measure needs at least one mass");
        }
        let nu = Self {
            offset,
            masses,
            truncated,
        };
        let total = nu.total();
        if (total.clone() - T::one()).abs_val().to_f64() - truncated
            > T::norm_tolerance().to_f64()
        {
            return Err(Error::NotNormalized {
                total: total.to_f64(),
            });
        }
        Ok(nu)
    }

    /// `Σ_{ν(k) < 0} |ν(k)|`.
    pub fn negative_mass(&self) -> T {
        self.masses
            .iter()
            .filter(|m| **m < T::zero())
            .fold(T::zero(), |acc, m| acc - m.clone())
    }

    /// Points carrying negative mass.
    pub fn negative_points(&self) -> Vec<usize> {
        self.masses
            .iter()
            .enumerate()
            .filter(|(_, m)| **m < T::zero())
            .map(|(i, _)| self.offset + i)
            .collect()
    }

    pub fn to_f64(&self) -> SignedMeasure<f64> {
        SignedMeasure {
            offset: self.offset,
            masses: self.masses.iter().map(Scalar::to_f64).collect(),
            truncated: self.truncated,
        }
    }

    /// Difference `self − other` pointwise over the union of the windows.
    pub fn pointwise_diff(&self, other: &impl MassFunction<T>) -> (usize, Vec<T>) {
        let lo = self.offset.min(other.offset());
        let hi = self.support_end().max(other.support_end());
        (
            lo,
            (lo..hi)
                .map(|k| self.mass_at(k) - other.mass_at(k))
                .collect(),
        )
    }
}

impl<T: Scalar> From<Pmf<T>> for SignedMeasure<T> {
    fn from(p: Pmf<T>) -> Self {
        Self {
            offset: p.offset(),
            truncated: p.truncated_mass(),
            masses: p.into_masses(),
        }
    }
}

impl<T> MassFunction<T> for SignedMeasure<T> {
    fn offset(&self) -> usize {
        self.offset
    }
    fn masses(&self) -> &[T] {
        &self.masses
    }
    fn truncated_mass(&self) -> f64 {
        self.truncated
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_and_negatives() {
        let nu = SignedMeasure::new(1, vec![-0.1f64, 0.6, 0.5], 0.0).unwrap();
        assert!((nu.negative_mass() - 0.1).abs() < 1e-16);
        assert_eq!(nu.negative_points(), vec![1]);
        assert!(SignedMeasure::new(0, vec![0.2, 0.2], 0.0).is_err());
        assert!(SignedMeasure::<f64>::new(0, vec![], 0.0).is_err());
        let p: SignedMeasure<f64> = Pmf::new(0, vec![0.5, 0.5]).unwrap().into();
        assert_eq!(p.mass_at(1), 0.5);
        let (lo, d) = nu.pointwise_diff(&p);
        assert_eq!(lo, 0);
        assert_eq!(d.len(), 4);
    }
}
