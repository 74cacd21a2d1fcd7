//! Newton identities between power sums and elementary symmetric functions.

use super::{PowerSums, ResidueCoeffs};
use crate::error::{invalid, Result};
use crate::scalar::Scalar;

fn alternating<T: Scalar>(i: usize, x: T) -> T {
    if i % 2 == 0 {
        x
    } else {
        -x
    }
}

/// `e_0..e_rmax` from `p_1..p_kmax` through `k e_k = Σ_{i=1}^k (−1)^{i−1} p_i e_{k−i}`.
pub fn elementary_from_power<T: Scalar>(ps: &PowerSums<T>, rmax: usize) -> Result<Vec<T>> {
    if rmax > ps.kmax() {
        return invalid(format!(
            "need power sums up to {rmax}, only {} available",
            ps.kmax()
        ));
    }
    let mut e = Vec::with_capacity(rmax + 1);
    e.push(T::one());
    for k in 1..=rmax {
        let acc = T::sum_of(
            (1..=k).map(|i| alternating(i - 1, ps.get(i).clone() * e[k - i].clone())),
        );
        e.push(acc / T::from_i64(k as i64));
    }
    Ok(e)
}

/// Inverse Newton recursion: `p_1..p_kmax` from `e_0..e_kmax` (`e_0 = 1`).
pub fn power_from_elementary<T: Scalar>(e: &[T], kmax: usize) -> Result<PowerSums<T>> {
    if e.len() < kmax + 1 {
        return invalid(format!(
            "need elementary functions up to {kmax}, got {}",
            e.len().saturating_sub(1)
        ));
    }
    let mut p: Vec<T> = Vec::with_capacity(kmax);
    for k in 1..=kmax {
        let head = T::from_i64(k as i64) * e[k].clone();
        let acc = T::sum_of(
            std::iter::once(head)
                .chain((1..k).map(|i| -alternating(i - 1, p[i - 1].clone() * e[k - i].clone()))),
        );
        p.push(alternating(k - 1, acc));
    }
    PowerSums::new(p)
}

/// Residue coefficients `b_s = e_s(A')`, `1 <= s <= rmax`, of the virtual
/// alphabet obtained by setting `p_1 = 0`. In particular `b_1 = 0`.
pub fn virtual_residue_coeffs<T: Scalar>(
    ps: &PowerSums<T>,
    rmax: usize,
    lambda: T,
) -> Result<ResidueCoeffs<T>> {
    let e = elementary_from_power(&ps.virtual_alphabet(), rmax)?;
    ResidueCoeffs::new(lambda, e[1..].to_vec())
}

/// `l! S(k, l)` for `1 <= l <= k <= r`, with `S` the set-partition counts.
fn scaled_stirling<T: Scalar>(r: usize) -> Vec<Vec<T>> {
    let mut s = vec![vec![T::zero(); r + 1]; r + 1];
    s[0][0] = T::one();
    for k in 1..=r {
        for l in 1..=k {
            s[k][l] = T::from_i64(l as i64) * s[k - 1][l].clone() + s[k - 1][l - 1].clone();
        }
    }
    let mut fact = T::one();
    for l in 1..=r {
        fact = fact * T::from_i64(l as i64);
        for row in s.iter_mut().skip(l) {
            row[l] = row[l].clone() * fact.clone();
        }
    }
    s
}

/// Raw moments `M_1..M_r` of a Bernoulli sum from its elementary symmetric
/// functions `e_1..e_r`: `M_k = Σ_l l! S(k, l) e_l`.
pub fn moments_from_elementary<T: Scalar>(e: &[T]) -> Vec<T> {
    let r = e.len();
    let s = scaled_stirling::<T>(r);
    (1..=r)
        .map(|k| {
            (1..=k).fold(T::zero(), |acc, l| {
                acc + s[k][l].clone() * e[l - 1].clone()
            })
        })
        .collect()
}

/// Recovers `e_1..e_r` from raw moments `M_1..M_r` by solving the triangular
/// system `M_k = Σ_l l! S(k, l) e_l`.
pub fn stirling2_elementary_bridge<T: Scalar>(moments: &[T]) -> Vec<T> {
    let r = moments.len();
    let s = scaled_stirling::<T>(r);
    let mut e: Vec<T> = Vec::with_capacity(r);
    for k in 1..=r {
        let mut acc = moments[k - 1].clone();
        for l in 1..k {
            acc = acc - s[k][l].clone() * e[l - 1].clone();
        }
        e.push(acc / s[k][k].clone());
    }
    e
}
