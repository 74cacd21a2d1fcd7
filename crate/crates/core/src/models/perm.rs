//! Cycle counts of weighted random permutations.
//!
//! A permutation with cycle type `(m_1, m_2, ...)` gets weight `Π θ_k^{m_k}`.
//! The normalised cycle-index polynomials satisfy `m h_m = Σ_k θ_k h_{m−k}`,
//! and marking every cycle by `w` turns `θ_k` into `w θ_k`.

use super::{bernoulli_sum_pmf, Pmf};
use crate::error::{invalid, Result};
use crate::scalar::Scalar;

fn check_thetas<T: Scalar>(theta: &[T], n: usize) -> Result<()> {
    if theta.len() < n {
        return invalid(format!(
            "need cycle weights θ_1..θ_{n}, got {}",
            theta.len()
        ));
    }
    match theta[..n].iter().find(|t| **t <= T::zero()) {
        Some(t) => invalid(format!("cycle weights must be positive, got {t:?}")),
        None => Ok(()),
    }
}

/// Coefficients `[w^j] h_n(wΘ)` for `j = 0..=n`.
pub fn weighted_perm_polynomial<T: Scalar>(theta: &[T], n: usize) -> Result<Vec<T>> {
    check_thetas(theta, n)?;
    let mut h: Vec<Vec<T>> = Vec::with_capacity(n + 1);
    h.push(vec![T::one()]);
    for m in 1..=n {
        let mut poly = vec![T::zero(); m + 1];
        for k in 1..=m {
            for (j, c) in h[m - k].iter().enumerate() {
                poly[j + 1] = poly[j + 1].clone() + theta[k - 1].clone() * c.clone();
            }
        }
        let mi = T::from_i64(m as i64);
        h.push(poly.into_iter().map(|c| c / mi.clone()).collect());
    }
    Ok(h.pop().unwrap_or_default())
}

/// `h_n(Θ)`, the total weight of `S_n` divided by `n!`.
pub fn weighted_perm_normalization<T: Scalar>(theta: &[T], n: usize) -> Result<T> {
    check_thetas(theta, n)?;
    let mut h = vec![T::one()];
    for m in 1..=n {
        let s = (1..=m).fold(T::zero(), |acc, k| {
            acc + theta[k - 1].clone() * h[m - k].clone()
        });
        h.push(s / T::from_i64(m as i64));
    }
    Ok(h.pop().unwrap_or_else(T::one))
}

/// Law of the number of cycles under the weights `θ_1..θ_n`.
pub fn weighted_perm_cycle_pmf<T: Scalar>(theta: &[T], n: usize) -> Result<Pmf<T>> {
    let poly = weighted_perm_polynomial(theta, n)?;
    let total = poly.iter().fold(T::zero(), |acc, c| acc + c.clone());
    Pmf::new(0, poly.into_iter().map(|c| c / total.clone()).collect())
}

/// `h_n(Θ) = Π_{i=1}^n (1 + (θ − 1)/i)` for constant weights `θ`.
pub fn ewens_normalization<T: Scalar>(theta: T, n: usize) -> T {
    (1..=n).fold(T::one(), |acc, i| {
        let i = T::from_i64(i as i64);
        acc * (i.clone() + theta.clone() - T::one()) / i
    })
}

/// Bernoulli weights `θ/(θ + i − 1)`, `i = 1..=n`, whose sum has the Ewens
/// cycle-count law.
pub fn ewens_weights<T: Scalar>(theta: T, n: usize) -> Vec<T> {
    (1..=n)
        .map(|i| theta.clone() / (theta.clone() + T::from_i64(i as i64 - 1)))
        .collect()
}

/// Cycle count of an Ewens(θ) permutation of size `n`.
///
/// The generating function `h_n(wθ)/h_n(θ) = Π_i (i − 1 + θw)/(i − 1 + θ)`
/// factorises, so the law is a Bernoulli convolution computed in `O(n²)`.
pub fn ewens_cycle_pmf<T: Scalar>(theta: T, n: usize) -> Result<Pmf<T>> {
    if theta <= T::zero() {
        return invalid(format!("theta must be positive, got {theta:?}"));
    }
    if n == 0 {
        return invalid("permutation size must be at least 1");
    }
    bernoulli_sum_pmf(&ewens_weights(theta, n))
}
