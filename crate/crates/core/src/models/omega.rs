//! Number of distinct prime divisors of a uniform integer in `{1, ..., N}`.

use super::Pmf;
use crate::arith::smallest_prime_factors;
use crate::error::{invalid, Error, Result};
use crate::scalar::Scalar;

/// Default cap on `N` for the sieve (about 500 MB of tables).
pub const DEFAULT_SIEVE_BUDGET: u64 = 100_000_000;

/// `ω(k)` for every `k <= n` (with `ω(0) = ω(1) = 0`).
pub fn omega_table(n: usize) -> Vec<u8> {
    let spf = smallest_prime_factors(n);
    let mut om = vec![0u8; n + 1];
    for k in 2..=n {
        let p = spf[k] as usize;
        let rest = k / p;
        om[k] = om[rest] + u8::from(spf[rest] as usize != p);
    }
    om
}

/// Histogram of `ω(k)` over `1 <= k <= n`.
pub fn omega_counts(n: u64, budget: u64) -> Result<Vec<u64>> {
    if n == 0 {
        return invalid("N must be at least 1");
    }
    if n > budget {
        return Err(Error::MemoryBudget {
            requested: n,
            budget,
        });
    }
    let table = omega_table(n as usize);
    let mut counts = vec![0u64; 1];
    for &w in &table[1..] {
        let w = w as usize;
        if w >= counts.len() {
            counts.resize(w + 1, 0);
        }
        counts[w] += 1;
    }
    Ok(counts)
}

/// Law of `ω(U)` for `U` uniform on `{1, ..., N}`.
pub fn omega_pmf<T: Scalar>(n: u64) -> Result<Pmf<T>> {
    omega_pmf_with_budget(n, DEFAULT_SIEVE_BUDGET)
}

pub fn omega_pmf_with_budget<T: Scalar>(n: u64, budget: u64) -> Result<Pmf<T>> {
    let counts = omega_counts(n, budget)?;
    let total = T::from_i64(n as i64);
    Pmf::new(
        0,
        counts
            .into_iter()
            .map(|c| T::from_i64(c as i64) / total.clone())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::MassFunction;

    #[test]
    fn small_n() {
        assert_eq!(omega_pmf::<f64>(1).unwrap().masses(), &[1.0]);
        assert_eq!(omega_pmf::<f64>(10).unwrap().masses(), &[0.1, 0.7, 0.2]);
        assert!(omega_pmf::<f64>(0).is_err());
        assert!(matches!(
            omega_pmf_with_budget::<f64>(1000, 10),
            Err(Error::MemoryBudget { .. })
        ));
    }

    #[test]
    fn table_values() {
        let t = omega_table(210);
        assert_eq!(t[120], 3);
        assert_eq!(t[210], 4);
        assert_eq!(t[64], 1);
        assert_eq!(t[97], 1);
        assert_eq!(t[1], 0);
    }
}
