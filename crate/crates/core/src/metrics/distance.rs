use crate::error::{Error, Result};
use crate::models::MassFunction;
use crate::scalar::{Compensated, Real, Scalar};

fn check_normalized<T: Real>(m: &impl MassFunction<T>) -> Result<()> {
    let total = m.masses().iter().copied().collect::<Compensated<T>>().value();
    let gap = Scalar::to_f64(&(total - T::one()).abs());
    if gap - m.truncated_mass() > Scalar::to_f64(&T::norm_tolerance()) {
        return Err(Error::NotNormalized {
            total: Scalar::to_f64(&total),
        });
    }
    Ok(())
}

/// `½ Σ_k |a(k) − b(k)|` over the union of the stored windows.
pub fn total_variation<T: Real>(a: &impl MassFunction<T>, b: &impl MassFunction<T>) -> Result<T> {
    check_normalized(a)?;
    check_normalized(b)?;
    let lo = a.offset().min(b.offset());
    let hi = a.support_end().max(b.support_end());
    let sum = (lo..hi)
        .map(|k| (a.mass_at(k) - b.mass_at(k)).abs())
        .collect::<Compensated<T>>()
        .value();
    Ok(sum * T::c(0.5))
}

/// `max_k |F_a(k) − F_b(k)|` for the distribution functions `F_a`, `F_b`.
pub fn kolmogorov<T: Real>(a: &impl MassFunction<T>, b: &impl MassFunction<T>) -> Result<T> {
    check_normalized(a)?;
    check_normalized(b)?;
    let lo = a.offset().min(b.offset());
    let hi = a.support_end().max(b.support_end());
    let mut cum = Compensated::new();
    let mut best = T::zero();
    for k in lo..hi {
        cum.add(a.mass_at(k) - b.mass_at(k));
        best = best.max(cum.value().abs());
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{bernoulli_sum_pmf, Pmf};
    use crate::schemes::poisson_pmf;

    #[test]
    fn basic_distances() {
        let d0 = Pmf::<f64>::dirac(0);
        let d1 = Pmf::<f64>::dirac(1);
        assert_eq!(total_variation(&d0, &d1).unwrap(), 1.0);
        assert_eq!(kolmogorov(&d0, &d1).unwrap(), 1.0);
        assert_eq!(total_variation(&d0, &d0).unwrap(), 0.0);
        assert_eq!(kolmogorov(&d1, &d1).unwrap(), 0.0);
    }

    #[test]
    fn bernoulli_against_poisson() {
        let be = bernoulli_sum_pmf(&[0.5]).unwrap();
        let po = poisson_pmf(0.5).unwrap();
        let tv = total_variation(&be, &po).unwrap();
        // |0.5 − e^{−1/2}| + |0.5 − e^{−1/2}/2| + P[Po > 1], halved
        let e = (-0.5f64).exp();
        let expect = 0.5 * ((0.5 - e).abs() + (0.5 - 0.5 * e).abs() + (1.0 - 1.5 * e));
        assert!((tv - expect).abs() < 1e-15);
        assert!((tv - 0.196_73).abs() < 1e-5);
    }

    #[test]
    fn rejects_unnormalized() {
        let bad = crate::schemes::SignedMeasure::new(0, vec![1.0], 0.0).unwrap();
        assert!(total_variation(&bad, &Pmf::<f64>::dirac(0)).is_ok());
        struct Half;
        impl MassFunction<f64> for Half {
            fn offset(&self) -> usize {
                0
            }
            fn masses(&self) -> &[f64] {
                &[0.5]
            }
        }
        assert!(total_variation(&Half, &Pmf::<f64>::dirac(0)).is_err());
        assert!(kolmogorov(&Half, &Pmf::<f64>::dirac(0)).is_err());
    }
}
