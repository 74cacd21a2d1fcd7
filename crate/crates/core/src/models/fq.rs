//! Number of distinct irreducible factors of a uniform monic polynomial of
//! degree `n` over `F_q`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Pow, Zero};

use super::Pmf;
use crate::arith::{binomial_big, divisors, gauss_irreducible_count, prime_power};
use crate::error::{invalid, Result};

/// Coefficients of `L_m(w) = Σ_{k | m} (m/k) I_q(m/k) (1 − (1 − w)^k)`.
fn log_derivative_coeffs(q: u64, m: u64) -> Result<Vec<BigInt>> {
    let mut poly = vec![BigInt::zero(); m as usize + 1];
    for k in divisors(m) {
        let d = m / k;
        let weight = BigInt::from(d) * gauss_irreducible_count(q, d)?;
        // 1 − (1 − w)^k = Σ_{j>=1} (−1)^{j+1} C(k, j) w^j
        for j in 1..=k {
            let c = &weight * binomial_big(k, j);
            if j % 2 == 1 {
                poly[j as usize] += c;
            } else {
                poly[j as usize] -= c;
            }
        }
    }
    Ok(poly)
}

/// `[w^j] f_n(w)`: the number of monic degree-`n` polynomials over `F_q`
/// with exactly `j` distinct monic irreducible factors. Sums to `q^n`.
pub fn fq_factor_counts(q: u64, n: usize) -> Result<Vec<BigInt>> {
    if prime_power(q).is_none() {
        return invalid(format!("q = {q} is not a prime power"));
    }
    if n == 0 {
        return invalid("degree must be at least 1");
    }
    let logs: Vec<Vec<BigInt>> = (1..=n as u64)
        .map(|m| log_derivative_coeffs(q, m))
        .collect::<Result<_>>()?;
    let mut f: Vec<Vec<BigInt>> = vec![vec![BigInt::from(1)]];
    for m in 1..=n {
        let mut acc = vec![BigInt::zero(); m + 1];
        for k in 1..=m {
            for (i, lc) in logs[k - 1].iter().enumerate() {
                if lc.is_zero() {
                    continue;
                }
                for (j, fc) in f[m - k].iter().enumerate() {
                    acc[i + j] += lc * fc;
                }
            }
        }
        let mb = BigInt::from(m);
        let next = acc
            .into_iter()
            .map(|c| {
                let (quot, rem) = c.div_rem(&mb);
                debug_assert!(rem.is_zero());
                quot
            })
            .collect();
        f.push(next);
    }
    Ok(f.pop().unwrap_or_default())
}

/// Exact law of the number of distinct irreducible factors.
pub fn fq_factor_pmf(q: u64, n: usize) -> Result<Pmf<BigRational>> {
    let counts = fq_factor_counts(q, n)?;
    let total: BigInt = Pow::pow(&BigInt::from(q), n as u64);
    debug_assert_eq!(counts.iter().sum::<BigInt>(), total);
    let masses = counts
        .into_iter()
        .map(|c| BigRational::new(c, total.clone()))
        .collect();
    Pmf::new(0, masses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::MassFunction;

    #[test]
    fn small_degrees() {
        let p = fq_factor_pmf(2, 1).unwrap().to_f64();
        assert_eq!(p.masses(), &[0.0, 1.0]);
        let p = fq_factor_pmf(2, 2).unwrap().to_f64();
        assert_eq!(p.masses(), &[0.0, 0.75, 0.25]);
        assert!(fq_factor_pmf(6, 2).is_err());
        assert!(fq_factor_pmf(2, 0).is_err());
    }

    #[test]
    fn counts_sum_to_q_power() {
        for q in [2u64, 3, 4, 5] {
            for n in 1..=30usize {
                let total: BigInt = fq_factor_counts(q, n).unwrap().iter().sum();
                assert_eq!(total, Pow::pow(&BigInt::from(q), n as u64), "q={q} n={n}");
            }
        }
    }

    #[test]
    fn single_factor_count_is_prime_power_count() {
        // j = 1 counts powers P^e of irreducibles with e·deg P = n
        let q = 3u64;
        let n = 6usize;
        let counts = fq_factor_counts(q, n).unwrap();
        let expect: BigInt = divisors(n as u64)
            .into_iter()
            .map(|d| gauss_irreducible_count(q, d).unwrap())
            .sum();
        assert_eq!(counts[1], expect);
        assert!(counts[0].is_zero());
    }
}
