use super::{poisson_pmf, SignedMeasure};
use crate::arith::{binomial_f64, ln_factorial};
use crate::error::Result;
use crate::models::MassFunction;
use crate::scalar::{Compensated, Real, Scalar};
use crate::symfunc::{Alphabet, ResidueCoeffs};

/// Weights `c_t = Σ_{s=t}^r (−1)^{s−t} C(s, t) b_s` (with `b_0 = 1`) of the
/// shifted Poisson laws making up the scheme: `ν(k) = Σ_t c_t Po(λ)(k − t)`.
pub fn scheme_shift_coeffs<T: Real>(rc: &ResidueCoeffs<T>) -> Vec<T> {
    let r = rc.order();
    (0..=r)
        .map(|t| {
            let mut acc = Compensated::new();
            for s in t..=r {
                let c = T::c(binomial_f64(s as u64, t as u64)) * rc.coeff(s);
                acc.add(if (s - t) % 2 == 0 { c } else { -c });
            }
            acc.value()
        })
        .collect()
}

/// The approximation scheme `ν^{(r)}` of order `r = rc.order()`.
pub fn scheme_measure<T: Real>(rc: &ResidueCoeffs<T>) -> Result<SignedMeasure<T>> {
    let po = poisson_pmf(rc.lambda)?;
    let c = scheme_shift_coeffs(rc);
    let r = rc.order();
    let offset = po.offset();
    let len = po.masses().len() + r;
    let masses = (0..len)
        .map(|i| {
            let k = offset + i;
            let mut acc = Compensated::new();
            for (t, ct) in c.iter().enumerate() {
                if t <= k {
                    acc.add(*ct * po.mass_at(k - t));
                }
            }
            acc.value()
        })
        .collect();
    let weight: f64 = c.iter().map(|x| Scalar::to_f64(&x.abs())).sum();
    SignedMeasure::new(offset, masses, weight * po.truncated_mass())
}

/// `ν^{(2)}(k) = Po(λ)(k) (1 + b_2 (1 − 2k/λ + k(k−1)/λ²))` for `b_1 = 0`.
pub fn second_order_closed_form(lambda: f64, b2: f64, k: usize) -> f64 {
    let kf = k as f64;
    let po = (-lambda + kf * lambda.ln() - ln_factorial(k as u64)).exp();
    po * (1.0 + b2 * (1.0 - 2.0 * kf / lambda + kf * (kf - 1.0) / (lambda * lambda)))
}

/// `ν^{(s+1)}(k) − ν^{(s)}(k)`, i.e. `b_{s+1} Po(λ)(k)` times the
/// Poisson–Charlier factor
/// `Σ_{l=0}^{min(s+1,k)} (−1)^{s+1−l} C(s+1, l) k!/(k−l)! λ^{−l}`.
///
/// Each term is assembled in log space so that `k!` and `λ^{−l}` never
/// appear separately.
pub fn charlier_delta(lambda: f64, s: usize, b_next: f64, k: usize) -> f64 {
    if b_next == 0.0 {
        return 0.0;
    }
    let log_po = -lambda + k as f64 * lambda.ln() - ln_factorial(k as u64);
    let n = s + 1;
    let mut acc = Compensated::new();
    let mut log_falling = 0.0;
    for l in 0..=n.min(k) {
        if l > 0 {
            log_falling += ((k - l + 1) as f64).ln() - lambda.ln();
        }
        let mag = binomial_f64(n as u64, l as u64) * (log_po + log_falling).exp();
        acc.add(if (n - l) % 2 == 0 { mag } else { -mag });
    }
    b_next * acc.value()
}

/// Scheme of order `r` using the residue coefficients of `alphabet`.
pub fn scheme_from_alphabet(lambda: f64, alphabet: &Alphabet, r: usize) -> Result<SignedMeasure<f64>> {
    scheme_measure(&alphabet.residue_coeffs(r, lambda)?)
}

/// Derived scheme `ν_{n,*}^{(r)}`: rate `λ_n` with the coefficients
/// `b_s = e_s(A')` of the limiting alphabet.
pub fn derived_scheme(lambda_n: f64, limiting_alphabet: &Alphabet, r: usize) -> Result<SignedMeasure<f64>> {
    scheme_from_alphabet(lambda_n, limiting_alphabet, r)
}
