//! Mod-Poisson parameters `λ_n` of the model families.

use crate::arith::mobius;
use crate::error::{invalid, Error, Result};
use crate::scalar::Compensated;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `γ_θ = Σ_{n>=1} [θ/(n + θ − 1) − θ log(1 + 1/n)]`.
///
/// The first `N` terms are summed directly; the rest is replaced by the
/// Euler–Maclaurin expansion `∫_N^∞ f + f(N)/2 − f'(N)/12`.
pub fn gamma_theta(theta: f64, tolerance: f64) -> Result<f64> {
    if !(theta > 0.0) || !theta.is_finite() {
        return invalid(format!("theta must be positive, got {theta}"));
    }
    let f = |x: f64| theta / (x + theta - 1.0) - theta * (1.0 / x).ln_1p();
    let df = |x: f64| -theta / (x + theta - 1.0).powi(2) + theta / (x * (x + 1.0));
    let n = 1000.0 + (10.0 * theta).ceil();
    let mut acc = Compensated::new();
    let mut k = 1.0;
    while k < n {
        acc.add(f(k));
        k += 1.0;
    }
    let integral =
        theta * n * (1.0 / n).ln_1p() - theta * ((theta - 2.0) / (n + 1.0)).ln_1p() - theta;
    acc.add(integral);
    acc.add(0.5 * f(n));
    acc.add(-df(n) / 12.0);
    let value = acc.value();
    // f''' ~ 24 θ |θ − 3/2| / x⁵ with a generous factor for the neglected terms
    let remainder = 24.0 * theta * (theta + 2.0).powi(3) / (720.0 * n.powi(5));
    let rounding = 8.0 * f64::EPSILON * (theta * n.ln() + value.abs() + 1.0);
    let error = remainder + rounding;
    if error > tolerance {
        return Err(Error::ToleranceUnreachable {
            requested: tolerance,
            achievable: error,
        });
    }
    Ok(value)
}

/// `R_q = Σ_{k>=2} μ(k)/k · log(1/(1 − q^{1−k}))`.
pub fn r_q(q: u64, tolerance: f64) -> Result<f64> {
    if q < 2 {
        return invalid(format!("q must be at least 2, got {q}"));
    }
    if !(tolerance > 0.0) {
        return invalid("tolerance must be positive");
    }
    let qf = q as f64;
    let mut acc = Compensated::new();
    let mut k = 2u64;
    loop {
        let x = qf.powf(1.0 - k as f64);
        let term = -(-x).ln_1p() / k as f64;
        match mobius(k) {
            1 => acc.add(term),
            -1 => acc.add(-term),
            _ => {}
        }
        if term < tolerance / 10.0 {
            return Ok(acc.value());
        }
        k += 1;
    }
}
