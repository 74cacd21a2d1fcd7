use num_complex::Complex64;
use num_traits::{FromPrimitive, Num};

use crate::arith::{binomial_f64, ln_factorial};
use crate::error::{invalid, Result};

/// Highest degree accepted by [`hermite_explicit`].
pub const HERMITE_EXPLICIT_MAX_DEGREE: usize = 40;

/// `H_m(z)` by the recurrence `H_{m+1} = z H_m − m H_{m−1}`.
pub fn hermite<T: Num + Clone + FromPrimitive>(m: usize, z: T) -> T {
    let mut prev = T::one();
    if m == 0 {
        return prev;
    }
    let mut cur = z.clone();
    for k in 1..m {
        let kk = T::from_usize(k).expect("small integer");
        let next = z.clone() * cur.clone() - kk * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `H_0(x), ..., H_m(x)`.
pub fn hermite_table(m: usize, x: f64) -> Vec<f64> {
    let mut h = Vec::with_capacity(m + 1);
    h.push(1.0);
    if m >= 1 {
        h.push(x);
    }
    for k in 1..m {
        h.push(x * h[k] - k as f64 * h[k - 1]);
    }
    h
}

/// `H_m(z) = Σ_{l <= m/2} (−1)^l m! / (2^l (m − 2l)! l!) z^{m−2l}`.
pub fn hermite_explicit(m: usize, z: Complex64) -> Result<Complex64> {
    if m > HERMITE_EXPLICIT_MAX_DEGREE {
        return invalid(format!(
            "explicit Hermite sum limited to degree {HERMITE_EXPLICIT_MAX_DEGREE}, got {m}"
        ));
    }
    let mut coeff = 1.0f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for l in 0..=m / 2 {
        if l > 0 {
            let j = (m - 2 * l) as f64;
            coeff *= -(j + 2.0) * (j + 1.0) / (2.0 * l as f64);
        }
        acc += z.powu((m - 2 * l) as u32) * coeff;
    }
    Ok(acc)
}

/// Right-hand side of the multiplication theorem
/// `H_m(ax) = Σ_l a^{m−2l} (a² − 1)^l C(m, 2l) (2l)!/(2^l l!) H_{m−2l}(x)`.
pub fn hermite_multiplication(m: usize, a: f64, x: f64) -> f64 {
    let h = hermite_table(m, x);
    let mut double_factorial = 1.0;
    let mut acc = 0.0;
    for l in 0..=m / 2 {
        if l > 0 {
            double_factorial *= (2 * l - 1) as f64;
        }
        acc += a.powi((m - 2 * l) as i32)
            * (a * a - 1.0).powi(l as i32)
            * binomial_f64(m as u64, 2 * l as u64)
            * double_factorial
            * h[m - 2 * l];
    }
    acc
}

/// Distance from `|H_m(z)|` to its Cramér-type bound: `e^{x²/4} √(m!)` on the
/// real line and `e^{|z|²/4} 3^{m/2} √(m!) e^{1/2} m^{1/4}` off it.
pub fn cramer_bound_margin(m: usize, z: Complex64) -> Result<f64> {
    if m == 0 {
        return invalid("Cramér bounds are stated for m >= 1");
    }
    let half_log_fact = 0.5 * ln_factorial(m as u64);
    let log_bound = if z.im == 0.0 {
        z.re * z.re / 4.0 + half_log_fact
    } else {
        let mf = m as f64;
        z.norm_sqr() / 4.0 + 0.5 * mf * 3f64.ln() + half_log_fact + 0.5 + 0.25 * mf.ln()
    };
    Ok(log_bound.exp() - hermite(m, z).norm())
}
