//! Brute-force reference computations used to cross-check the fast models.

use crate::error::{invalid, Result};
use crate::models::Pmf;
use crate::scalar::Scalar;

/// Cycle-count law of `S_n` under weights `Π θ_k^{m_k}`, by visiting every
/// permutation. Intended for `n <= 9`.
pub fn enumerate_permutation_cycles<T: Scalar>(theta: &[T], n: usize) -> Result<Pmf<T>> {
    if n == 0 || n > 10 {
        return invalid(format!("enumeration supports 1 <= n <= 10, got {n}"));
    }
    if theta.len() < n {
        return invalid(format!("need cycle weights θ_1..θ_{n}, got {}", theta.len()));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut weights = vec![T::zero(); n + 1];
    loop {
        let (cycles, w) = cycle_weight(&perm, theta);
        weights[cycles] = weights[cycles].clone() + w;
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let total = weights.iter().fold(T::zero(), |acc, w| acc + w.clone());
    Pmf::new(0, weights.into_iter().map(|w| w / total.clone()).collect())
}

fn cycle_weight<T: Scalar>(perm: &[usize], theta: &[T]) -> (usize, T) {
    let mut seen = vec![false; perm.len()];
    let mut cycles = 0;
    let mut w = T::one();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        cycles += 1;
        w = w * theta[len - 1].clone();
    }
    (cycles, w)
}

fn next_permutation(a: &mut [usize]) -> bool {
    let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) else {
        return false;
    };
    let j = (i..a.len()).rev().find(|&j| a[j] > a[i - 1]).expect("pivot exists");
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Coefficients low to high; the leading one is 1.
type Poly = Vec<u64>;

fn poly_rem(f: &[u64], g: &[u64], p: u64) -> Poly {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().expect("nonempty");
        if lead != 0 {
            let shift = r.len() - 1 - dg;
            for (i, &gc) in g.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - lead * gc % p) % p;
            }
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

fn poly_div(f: &[u64], g: &[u64], p: u64) -> Poly {
    let dg = g.len() - 1;
    let mut r = f.to_vec();
    let mut quot = vec![0; f.len() - dg];
    for shift in (0..quot.len()).rev() {
        let lead = r[shift + dg];
        quot[shift] = lead;
        for (i, &gc) in g.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - lead * gc % p) % p;
        }
    }
    quot
}

fn monic_polys(p: u64, d: usize) -> impl Iterator<Item = Poly> {
    let count = p.pow(d as u32);
    (0..count).map(move |mut idx| {
        let mut c = Vec::with_capacity(d + 1);
        for _ in 0..d {
            c.push(idx % p);
            idx /= p;
        }
        c.push(1);
        c
    })
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Monic irreducibles over `F_p` of degree `1..=dmax`, by trial division.
pub fn irreducible_polys(p: u64, dmax: usize) -> Result<Vec<Vec<u64>>> {
    if !is_prime(p) {
        return invalid(format!("enumeration needs a prime field, got q = {p}"));
    }
    let mut irr: Vec<Poly> = Vec::new();
    for d in 1..=dmax {
        let found: Vec<Poly> = monic_polys(p, d)
            .filter(|f| {
                irr.iter()
                    .take_while(|g| 2 * (g.len() - 1) <= d)
                    .all(|g| !poly_rem(f, g, p).is_empty())
            })
            .collect();
        irr.extend(found);
    }
    Ok(irr)
}

/// `counts[j]` = number of monic degree-`n` polynomials over `F_p` with `j`
/// distinct irreducible factors, found by factoring each one.
pub fn enumerate_fq_factor_counts(p: u64, n: usize) -> Result<Vec<u64>> {
    if n == 0 || (p as f64).powi(n as i32) > 1e7 {
        return invalid(format!("enumeration of degree {n} over F_{p} is out of range"));
    }
    let irr = irreducible_polys(p, n)?;
    let mut counts = vec![0u64; n + 1];
    for f in monic_polys(p, n) {
        let mut rest = f;
        let mut distinct = 0;
        for g in &irr {
            if g.len() > rest.len() {
                break;
            }
            if poly_rem(&rest, g, p).is_empty() {
                distinct += 1;
                while rest.len() >= g.len() && poly_rem(&rest, g, p).is_empty() {
                    rest = poly_div(&rest, g, p);
                }
            }
        }
        counts[distinct] += 1;
    }
    Ok(counts)
}

/// Number of distinct prime factors by trial division.
pub fn omega_by_trial_division(mut n: u64) -> u32 {
    let mut count = 0;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            count += 1;
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        count += 1;
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::MassFunction;

    #[test]
    fn symmetric_group_three() {
        let p = enumerate_permutation_cycles(&[1.0f64, 1.0, 1.0], 3).unwrap();
        let expect = [0.0, 2.0 / 6.0, 3.0 / 6.0, 1.0 / 6.0];
        for (a, b) in p.masses().iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
        let p = enumerate_permutation_cycles(&[2.0f64, 2.0], 2).unwrap();
        assert!((p.mass_at(1) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn irreducible_counts() {
        let irr = irreducible_polys(2, 4).unwrap();
        let by_degree: Vec<usize> = (1..=4).map(|d| irr.iter().filter(|g| g.len() == d + 1).count()).collect();
        assert_eq!(by_degree, vec![2, 1, 2, 3]);
        assert!(irreducible_polys(4, 2).is_err());
    }

    #[test]
    fn quadratics_over_f2() {
        assert_eq!(enumerate_fq_factor_counts(2, 2).unwrap(), vec![0, 3, 1]);
        assert_eq!(enumerate_fq_factor_counts(2, 1).unwrap(), vec![0, 2]);
    }

    #[test]
    fn omega_small() {
        assert_eq!(omega_by_trial_division(1), 0);
        assert_eq!(omega_by_trial_division(120), 3);
        assert_eq!(omega_by_trial_division(97), 1);
        assert_eq!(omega_by_trial_division(30030), 6);
    }
}
