//! Sums of independent Bernoulli variables.

use super::Pmf;
use crate::error::{invalid, Result};
use crate::scalar::Scalar;

fn check_weights<T: Scalar>(weights: &[T]) -> Result<()> {
    match weights
        .iter()
        .find(|w| **w < T::zero() || **w > T::one())
    {
        Some(w) => invalid(format!("Bernoulli weight {w:?} outside [0, 1]")),
        None => Ok(()),
    }
}

/// Exact law of `Σ Be(p_i)` by successive convolution, support `0..=n`.
pub fn bernoulli_sum_pmf<T: Scalar>(weights: &[T]) -> Result<Pmf<T>> {
    check_weights(weights)?;
    let mut masses = Vec::with_capacity(weights.len() + 1);
    masses.push(T::one());
    for p in weights {
        let q = T::one() - p.clone();
        masses.push(T::zero());
        for k in (1..masses.len()).rev() {
            masses[k] = masses[k].clone() * q.clone() + masses[k - 1].clone() * p.clone();
        }
        masses[0] = masses[0].clone() * q;
    }
    Pmf::new(0, masses)
}

/// Convolution that discards masses below `threshold` at both ends of the
/// window after every step. The discarded total is recorded as truncated
/// mass. Cost is `O(n · window)`, which makes `n = 10⁶` weights feasible.
pub fn bernoulli_sum_pmf_trimmed(weights: &[f64], threshold: f64) -> Result<Pmf<f64>> {
    check_weights(weights)?;
    if !(threshold >= 0.0) {
        return invalid(format!("threshold must be nonnegative, got {threshold}"));
    }
    let mut offset = 0usize;
    let mut masses = vec![1.0f64];
    let mut dropped = 0.0f64;
    for &p in weights {
        let q = 1.0 - p;
        masses.push(0.0);
        for k in (1..masses.len()).rev() {
            masses[k] = masses[k] * q + masses[k - 1] * p;
        }
        masses[0] *= q;
        while masses.len() > 1 && masses[masses.len() - 1] < threshold {
            dropped += masses.pop().unwrap_or(0.0);
        }
        let lead = masses
            .iter()
            .take(masses.len() - 1)
            .take_while(|&&m| m < threshold)
            .count();
        if lead > 0 {
            dropped += masses.drain(..lead).sum::<f64>();
            offset += lead;
        }
    }
    Pmf::with_truncation(offset, masses, dropped)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::MassFunction;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    #[test]
    fn small_cases() {
        assert_eq!(bernoulli_sum_pmf(&[1.0]).unwrap().masses(), &[0.0, 1.0]);
        assert_eq!(
            bernoulli_sum_pmf(&[0.5, 0.5]).unwrap().masses(),
            &[0.25, 0.5, 0.25]
        );
        assert!(bernoulli_sum_pmf(&[1.5]).is_err());
        assert!(bernoulli_sum_pmf(&[-0.1]).is_err());
        assert_eq!(bernoulli_sum_pmf::<f64>(&[]).unwrap().masses(), &[1.0]);
    }

    #[test]
    fn harmonic_weights_give_stirling_cycle_counts() {
        let w: Vec<BigRational> = (1..=4)
            .map(|i| BigRational::new(BigInt::from(1), BigInt::from(i)))
            .collect();
        let pmf = bernoulli_sum_pmf(&w).unwrap();
        let expect: Vec<BigRational> = [0, 6, 11, 6, 1]
            .iter()
            .map(|&c| BigRational::new(BigInt::from(c), BigInt::from(24)))
            .collect();
        assert_eq!(pmf.masses(), &expect[..]);
    }

    #[test]
    fn trimmed_agrees_with_full() {
        let w: Vec<f64> = (1..=300).map(|i| 1.0 / i as f64).collect();
        let full = bernoulli_sum_pmf(&w).unwrap();
        let cut = bernoulli_sum_pmf_trimmed(&w, 1e-20).unwrap();
        assert!(cut.truncated_mass() < 1e-17);
        for k in 0..full.support_end() {
            assert!((full.mass_at(k) - cut.mass_at(k)).abs() < 1e-18);
        }
    }
}
