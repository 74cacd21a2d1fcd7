//! Elementary arithmetic functions: Möbius function, divisors, prime sieves
//! and Gauss's count of irreducible polynomials.

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::error::{invalid, Result};

/// Möbius function μ(n) by trial division.
pub fn mobius(n: u64) -> i8 {
    assert!(n >= 1, "mobius is defined for n >= 1");
    let mut m = n;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Smallest-prime-factor table for `0..=n` (entries 0 and 1 are 0).
pub fn smallest_prime_factors(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    let mut primes: Vec<u32> = Vec::new();
    for i in 2..=n {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u32);
        }
        let si = spf[i];
        for &p in &primes {
            let m = i as u64 * p as u64;
            if p > si || m > n as u64 {
                break;
            }
            spf[m as usize] = p;
        }
    }
    spf
}

/// Primes up to and including `n`.
pub fn primes_up_to(n: usize) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Returns `Some((p, e))` when `q = p^e` with `p` prime and `e >= 1`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q {
        if q % p == 0 {
            break;
        }
        p += 1;
    }
    if q % p != 0 {
        // q itself is prime
        return Some((q, 1));
    }
    let mut m = q;
    let mut e = 0;
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    (m == 1).then_some((p, e))
}

/// Number of monic irreducible polynomials of degree `n` over a field with
/// `q` elements: `(1/n) Σ_{d | n} μ(d) q^{n/d}`, computed exactly.
pub fn gauss_irreducible_count(q: u64, n: u64) -> Result<BigInt> {
    if q < 2 {
        return invalid(format!("q must be >= 2, got {q}"));
    }
    if n == 0 {
        return invalid("degree must be >= 1");
    }
    let qb = BigInt::from(q);
    let mut acc = BigInt::zero();
    for d in divisors(n) {
        let mu = mobius(d);
        if mu == 0 {
            continue;
        }
        let term: BigInt = Pow::pow(&qb, n / d);
        if mu > 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    debug_assert!((&acc % BigInt::from(n)).is_zero());
    Ok(acc / BigInt::from(n))
}

/// `I_q(m) · q^{-k m}` in floating point, without forming `q^m`.
pub(crate) fn irreducible_weight(q: u64, m: u64, k: u32) -> f64 {
    let lq = (q as f64).ln();
    let mut acc = 0.0;
    for d in divisors(m) {
        let mu = mobius(d);
        if mu == 0 {
            continue;
        }
        let expo = (m / d) as f64 - k as f64 * m as f64;
        acc += mu as f64 * (expo * lq).exp();
    }
    acc / m as f64
}

/// `n choose k` as a float (exact for moderate arguments).
pub fn binomial_f64(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc.round()
}

/// Exact binomial coefficient.
pub fn binomial_big(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `log k!`: exact summation for small `k`, Stirling series beyond.
pub fn ln_factorial(k: u64) -> f64 {
    if k < 256 {
        return (2..=k).map(|i| (i as f64).ln()).sum();
    }
    let x = (k + 1) as f64;
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln()
        + inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)))
}

/// Stirling numbers of the second kind `S(k, l)` for `0 <= l <= k <= n`,
/// as a lower-triangular table.
pub fn stirling2_table(n: usize) -> Vec<Vec<f64>> {
    let mut t = vec![vec![0.0; n + 1]; n + 1];
    t[0][0] = 1.0;
    for k in 1..=n {
        for l in 1..=k {
            t[k][l] = l as f64 * t[k - 1][l] + t[k - 1][l - 1];
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mobius_small_values() {
        let expected = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (i, &mu) in expected.iter().enumerate() {
            assert_eq!(mobius(i as u64 + 1), mu, "mu({})", i + 1);
        }
    }

    #[test]
    fn divisors_sorted() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }

    #[test]
    fn spf_matches_trial_division() {
        let spf = smallest_prime_factors(1000);
        for n in 2..=1000u32 {
            let mut p = 2;
            while n % p != 0 {
                p += 1;
            }
            assert_eq!(spf[n as usize], p);
        }
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(97), Some((97, 1)));
    }

    #[test]
    fn gauss_counts() {
        assert_eq!(gauss_irreducible_count(2, 1).unwrap(), BigInt::from(2));
        assert_eq!(gauss_irreducible_count(2, 2).unwrap(), BigInt::from(1));
        assert_eq!(gauss_irreducible_count(2, 4).unwrap(), BigInt::from(3));
        assert_eq!(gauss_irreducible_count(3, 2).unwrap(), BigInt::from(3));
        assert!(gauss_irreducible_count(1, 2).is_err());
    }

    #[test]
    fn irreducible_weight_matches_exact() {
        for q in [2u64, 3, 5] {
            for m in 1..8u64 {
                let exact = gauss_irreducible_count(q, m).unwrap();
                let approx = irreducible_weight(q, m, 1) * (q as f64).powi(m as i32);
                let exact_f: f64 = exact.to_string().parse().unwrap();
                assert!((approx - exact_f).abs() < 1e-9 * exact_f.max(1.0));
            }
        }
    }

    #[test]
    fn ln_factorial_is_continuous_at_switch() {
        let below: f64 = (2..=300u64).map(|i| (i as f64).ln()).sum();
        assert!((ln_factorial(300) - below).abs() < 1e-10 * below);
        assert_eq!(ln_factorial(0), 0.0);
        assert!((ln_factorial(4) - 24f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn stirling2_rows() {
        let t = stirling2_table(5);
        assert_eq!(t[4][2], 7.0);
        assert_eq!(t[5][3], 25.0);
        assert_eq!(binomial_f64(10, 3), 120.0);
        assert_eq!(binomial_big(40, 20).to_string(), "137846528820");
    }
}
