//! Zeta-type sums: Hurwitz, Riemann and prime zeta at integer arguments.
//!
//! Sums of inverse powers use a partial sum of [`ZETA_CUTOFF`] terms, the
//! integral tail and the first Euler–Maclaurin corrections. The reported error
//! estimate is the magnitude of the first omitted Euler–Maclaurin term plus a
//! rounding allowance for the compensated partial sum.

use crate::arith::mobius;
use crate::error::{invalid, Result};
use crate::scalar::Compensated;

pub const ZETA_CUTOFF: u64 = 100_000;

/// A value paired with an a-posteriori error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

/// `Σ_{n >= 0} (scale / (n + a))^k` for `k >= 2`, `a > 0`.
pub fn inverse_power_sum(k: u32, a: f64, scale: f64) -> Estimate {
    assert!(k >= 2 && a > 0.0 && scale > 0.0);
    let mut acc = Compensated::new();
    let ki = k as i32;
    for n in 0..ZETA_CUTOFF {
        let t = (scale / (n as f64 + a)).powi(ki);
        if t == 0.0 {
            break;
        }
        acc.add(t);
    }
    let x = a + ZETA_CUTOFF as f64;
    let kf = k as f64;
    let head = (scale / x).powi(ki);
    // ∫_x^∞ + f(x)/2 + B₂ term
    acc.add(head * x / (kf - 1.0));
    acc.add(head * 0.5);
    acc.add(head * kf / (12.0 * x));
    let value = acc.value();
    let em_next = head * kf * (kf + 1.0) * (kf + 2.0) / (720.0 * x * x * x);
    Estimate {
        value,
        error: em_next + 4.0 * f64::EPSILON * value,
    }
}

/// Riemann zeta at an integer `k >= 2`.
pub fn riemann_zeta(k: u32) -> Estimate {
    inverse_power_sum(k, 1.0, 1.0)
}

/// `ζ(k) − 1`, accurate in relative terms for large `k`.
pub fn zeta_minus_one(k: u32) -> Estimate {
    inverse_power_sum(k, 2.0, 1.0)
}

/// Hurwitz zeta `ζ(k, a) = Σ_{n >= 0} (n + a)^{-k}`.
pub fn hurwitz_zeta(k: u32, a: f64) -> Estimate {
    inverse_power_sum(k, a, 1.0)
}

/// Prime zeta `P(k) = Σ_p p^{-k}` through `Σ_m μ(m)/m · log ζ(k m)`.
pub fn prime_zeta(k: u32, tolerance: f64) -> Result<Estimate> {
    if k < 2 {
        return invalid("prime zeta requires k >= 2");
    }
    if !(tolerance > 0.0) {
        return invalid("tolerance must be positive");
    }
    let mut acc = Compensated::new();
    let mut err = 0.0;
    let mut m = 1u64;
    loop {
        let z = zeta_minus_one(k * m as u32);
        let log_zeta = z.value.ln_1p();
        let magnitude = log_zeta / m as f64;
        let mu = mobius(m);
        if mu != 0 {
            acc.add(mu as f64 * magnitude);
            err += z.error / m as f64;
        }
        if magnitude < tolerance / 10.0 {
            // remaining terms decay geometrically with ratio <= 2^{-k}
            err += magnitude;
            break;
        }
        m += 1;
    }
    let value = acc.value();
    Ok(Estimate {
        value,
        error: err + 4.0 * f64::EPSILON * value,
    })
}
