use super::{poisson_pmf, SignedMeasure};
use crate::arith::binomial_f64;
use crate::error::{invalid, Result};
use crate::models::{MassFunction, Pmf};
use crate::scalar::{Compensated, Real};
use crate::symfunc::ResidueCoeffs;

/// A genuine probability law `μ^{(r)}` obtained from a scheme by absorbing
/// its negative mass `β` at the first point `N` where the cumulative
/// positive mass exceeds `β`: `μ(N) = α_N − β`, `μ(n) = max(ν(n), 0)`
/// beyond `N` and zero before.
pub fn rectify_positive<T: Real>(nu: &SignedMeasure<T>) -> Result<Pmf<T>> {
    let beta = nu.negative_mass();
    let mut alpha = T::zero();
    for (i, &m) in nu.masses().iter().enumerate() {
        if m > T::zero() {
            alpha = alpha + m;
        }
        if alpha > beta {
            let mut masses = vec![alpha - beta];
            masses.extend(nu.masses()[i + 1..].iter().map(|&m| m.max(T::zero())));
            return Pmf::with_truncation(nu.offset() + i, masses, nu.truncated_mass());
        }
    }
    invalid("positive mass never exceeds the negative mass; the measure is not normalized")
}

/// `ν^{(r)}(f)` computed as `E[g(Y)]` for `Y ~ Po(λ)` and
/// `g = f + Σ_s b_s Δ₊^s f`, where `Δ₊ f(k) = f(k+1) − f(k)`.
pub fn expect_via_scheme<T: Real>(f: impl Fn(usize) -> T, rc: &ResidueCoeffs<T>) -> Result<T> {
    let po = poisson_pmf(rc.lambda)?;
    let r = rc.order();
    let mut acc = Compensated::new();
    for (i, &p) in po.masses().iter().enumerate() {
        let k = po.offset() + i;
        let mut g = Compensated::new();
        g.add(f(k));
        for s in 1..=r {
            let b = rc.coeff(s);
            if b == T::zero() {
                continue;
            }
            let mut diff = Compensated::new();
            for j in 0..=s {
                let c = T::c(binomial_f64(s as u64, j as u64)) * f(k + j);
                diff.add(if (s - j) % 2 == 0 { c } else { -c });
            }
            g.add(b * diff.value());
        }
        acc.add(p * g.value());
    }
    Ok(acc.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schemes::scheme_measure;

    #[test]
    fn hand_traced_example() {
        let nu = SignedMeasure::new(0, vec![-0.1f64, 0.6, 0.5], 0.0).unwrap();
        let mu = rectify_positive(&nu).unwrap();
        assert_eq!(mu.offset(), 1);
        assert!((mu.mass_at(1) - 0.5).abs() < 1e-16);
        assert_eq!(mu.mass_at(2), 0.5);
        assert_eq!(mu.mass_at(0), 0.0);
    }

    #[test]
    fn nonnegative_measure_unchanged() {
        let nu = SignedMeasure::new(2, vec![0.0, 0.3, 0.7], 0.0).unwrap();
        let mu = rectify_positive(&nu).unwrap();
        for k in 0..6 {
            assert_eq!(mu.mass_at(k), nu.mass_at(k));
        }
    }

    #[test]
    fn expectation_examples() {
        let rc = ResidueCoeffs::new(2.0f64, vec![0.0, -0.125]).unwrap();
        assert!((expect_via_scheme(|_| 1.0, &rc).unwrap() - 1.0).abs() < 1e-15);
        let ind = expect_via_scheme(|k| if k == 0 { 1.0 } else { 0.0 }, &rc).unwrap();
        let nu = scheme_measure(&rc).unwrap();
        assert!((ind - nu.mass_at(0)).abs() < 1e-15);
        let mean = expect_via_scheme(|k| k as f64, &rc).unwrap();
        assert!((mean - 2.0).abs() < 1e-13);
    }
}
