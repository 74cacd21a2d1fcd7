use crate::arith::ln_factorial;
use crate::error::{invalid, Result};
use crate::models::Pmf;
use crate::scalar::{Real, Scalar};

/// Stored masses are at least this large.
pub const POISSON_MASS_CUTOFF: f64 = 1e-18;
/// The omitted mass on either side is below this.
pub const POISSON_TAIL_CUTOFF: f64 = 1e-15;

/// The Poisson law `Po(λ)` over the window where it is not negligible.
///
/// Masses are propagated from the mode by the ratio recurrence, starting
/// from the log-space value `−λ + m log λ − log m!`. The omitted mass is
/// summed separately and recorded as truncated mass.
pub fn poisson_pmf<T: Real>(lambda: T) -> Result<Pmf<T>> {
    let lf = Scalar::to_f64(&lambda);
    if !(lf > 0.0) || !lf.is_finite() {
        return invalid(format!("Poisson rate must be positive and finite, got {lf}"));
    }
    let mode = lf.floor() as usize;
    let at_mode = T::c((-lf + mode as f64 * lf.ln() - ln_factorial(mode as u64)).exp());
    let cutoff = T::c(POISSON_MASS_CUTOFF);
    let tail_cut = T::c(POISSON_TAIL_CUTOFF);
    let negligible = T::c(1e-300);

    let from = |k: usize| <T as Scalar>::from_i64(k as i64);

    let mut upper = Vec::new();
    let mut omitted = T::zero();
    let mut p = at_mode;
    let mut k = mode;
    loop {
        k += 1;
        p = p * lambda / from(k);
        let ratio = lambda / from(k + 1);
        if p < cutoff && ratio < T::one() && p / (T::one() - ratio) < tail_cut {
            while p > negligible {
                omitted = omitted + p;
                k += 1;
                p = p * lambda / from(k);
            }
            break;
        }
        upper.push(p);
    }

    let mut lower = Vec::new();
    let mut p = at_mode;
    let mut k = mode;
    while k > 0 {
        p = p * from(k) / lambda;
        k -= 1;
        let ratio = from(k) / lambda;
        if p < cutoff && p / (T::one() - ratio) < tail_cut {
            while k > 0 && p > negligible {
                omitted = omitted + p;
                p = p * from(k) / lambda;
                k -= 1;
            }
            omitted = omitted + p;
            break;
        }
        lower.push(p);
    }
    let offset = mode - lower.len();
    let mut masses: Vec<T> = lower.into_iter().rev().collect();
    masses.push(at_mode);
    masses.extend(upper);
    Pmf::with_truncation(offset, masses, Scalar::to_f64(&omitted))
}
