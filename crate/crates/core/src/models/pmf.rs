use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::scalar::Scalar;

/// Read access shared by probability mass functions and signed measures on ℕ.
pub trait MassFunction<T> {
    /// First point of the stored support window.
    fn offset(&self) -> usize;

    /// Masses at `offset, offset + 1, ...`.
    fn masses(&self) -> &[T];

    /// Absolute mass known to lie outside the stored window (0 when exact).
    fn truncated_mass(&self) -> f64 {
        0.0
    }

    fn mass_at(&self, k: usize) -> T
    where
        T: Scalar,
    {
        k.checked_sub(self.offset())
            .and_then(|i| self.masses().get(i))
            .cloned()
            .unwrap_or_else(T::zero)
    }

    /// One past the last stored point.
    fn support_end(&self) -> usize {
        self.offset() + self.masses().len()
    }

    fn total(&self) -> T
    where
        T: Scalar,
    {
        self.masses()
            .iter()
            .fold(T::zero(), |acc, m| acc + m.clone())
    }
}

/// A probability mass function on ℕ stored over a finite window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pmf<T> {
    offset: usize,
    masses: Vec<T>,
    #[serde(default)]
    truncated: f64,
}

impl<T: Scalar> Pmf<T> {
    /// Validates nonnegativity and unit total (exact in rational mode).
    pub fn new(offset: usize, masses: Vec<T>) -> Result<Self> {
        Self::with_truncation(offset, masses, 0.0)
    }

    /// Like [`Pmf::new`] for a window that omits `truncated` mass in total.
    pub fn with_truncation(offset: usize, masses: Vec<T>, truncated: f64) -> Result<Self> {
        if masses.is_empty() {
            return invalid("a pmf needs at least one mass");
        }
        if let Some(m) = masses.iter().find(|m| **m < T::zero()) {
            return invalid(format!("negative mass {m:?}"));
        }
        if !(truncated >= 0.0) {
            return invalid(format!("truncated mass must be nonnegative, got {truncated}"));
        }
        let pmf = Self {
            offset,
            masses,
            truncated,
        };
        let total = pmf.total();
        let gap = (total.clone() - T::one()).abs_val();
        if gap.to_f64() - truncated > T::norm_tolerance().to_f64() {
            return Err(Error::NotNormalized {
                total: total.to_f64(),
            });
        }
        Ok(pmf)
    }

    /// Point mass at `k`.
    pub fn dirac(k: usize) -> Self {
        Self {
            offset: k,
            masses: vec![T::one()],
            truncated: 0.0,
        }
    }

    pub fn into_masses(self) -> Vec<T> {
        self.masses
    }

    pub fn to_f64(&self) -> Pmf<f64> {
        Pmf {
            offset: self.offset,
            masses: self.masses.iter().map(Scalar::to_f64).collect(),
            truncated: self.truncated,
        }
    }

    /// Drops zero masses at both ends of the window.
    pub fn trimmed(mut self) -> Self {
        let first = self.masses.iter().position(|m| !m.is_zero());
        let Some(first) = first else { return self };
        let last = self.masses.iter().rposition(|m| !m.is_zero()).unwrap_or(first);
        self.masses.truncate(last + 1);
        self.masses.drain(..first);
        self.offset += first;
        self
    }

    /// `Σ k · pmf(k)`.
    pub fn mean(&self) -> T {
        self.masses
            .iter()
            .enumerate()
            .fold(T::zero(), |acc, (i, m)| {
                acc + T::from_i64((self.offset + i) as i64) * m.clone()
            })
    }
}

impl<T> MassFunction<T> for Pmf<T> {
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
    use num_rational::BigRational;

    #[test]
    fn validation() {
        assert!(Pmf::new(0, vec![0.5, 0.5]).is_ok());
        assert!(Pmf::new(0, vec![0.5, 0.6]).is_err());
        assert!(Pmf::new(0, vec![-0.1, 1.1]).is_err());
        assert!(Pmf::<f64>::new(0, vec![]).is_err());
        assert!(Pmf::with_truncation(0, vec![0.5, 0.5 - 1e-16], 1e-16).is_ok());
        let half = BigRational::new(1.into(), 2.into());
        assert!(Pmf::new(3, vec![half.clone(), half.clone()]).is_ok());
        let third = BigRational::new(1.into(), 3.into());
        assert!(Pmf::new(0, vec![half, third]).is_err());
    }

    #[test]
    fn access_and_trim() {
        let p = Pmf::new(2, vec![0.0, 0.25, 0.75, 0.0]).unwrap();
        assert_eq!(p.mass_at(0), 0.0);
        assert_eq!(p.mass_at(4), 0.75);
        assert_eq!(p.mass_at(10), 0.0);
        assert_eq!(p.support_end(), 6);
        let t = p.trimmed();
        assert_eq!(t.offset(), 3);
        assert_eq!(t.masses(), &[0.25, 0.75]);
        assert_eq!(t.mean(), 3.75);
        assert_eq!(Pmf::<f64>::dirac(4).mass_at(4), 1.0);
    }
}
