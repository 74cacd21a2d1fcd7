use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{invalid, Result};

/// Terms of `Σ_k ∫_0^{1/2} log(1 − t²/(z+k)²) dt` integrated numerically;
/// beyond this the integrand's power series is summed in closed form.
const QUADRATURE_TERMS: usize = 64;

/// Nodes and weights of the 16-point Gauss–Legendre rule on `[−1, 1]`.
pub fn gauss_legendre_16() -> &'static [(f64, f64); 16] {
    static RULE: OnceLock<[(f64, f64); 16]> = OnceLock::new();
    RULE.get_or_init(|| {
        const N: usize = 16;
        let mut rule = [(0.0, 0.0); N];
        for i in 0..N {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (N as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=N {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = N as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            rule[i] = (x, 2.0 / ((1.0 - x * x) * dp * dp));
        }
        rule
    })
}

fn half_interval_log_integral(u: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let u2 = u * u;
    gauss_legendre_16()
        .iter()
        .map(|&(x, w)| {
            let t = 0.25 * (x + 1.0);
            (one - t * t / u2).ln() * w
        })
        .sum::<Complex64>()
        * 0.25
}

/// `Σ_{k>K} (z+k)^{-s}` by Euler–Maclaurin from `v = z + K + 1`.
fn hurwitz_tail(v: Complex64, s: i32) -> Complex64 {
    let sf = s as f64;
    let vs = v.powi(-s);
    v * vs / (sf - 1.0) + vs * 0.5 + vs / v * (sf / 12.0)
        - vs / v.powi(3) * (sf * (sf + 1.0) * (sf + 2.0) / 720.0)
        + vs / v.powi(5) * (sf * (sf + 1.0) * (sf + 2.0) * (sf + 3.0) * (sf + 4.0) / 30240.0)
}

/// `log Γ(z + 1)` for `Re z > 0`, from
/// `(z+½)log(z+½) − (z+½) + ½ log 2π + Σ_{k>=1} ∫_0^{1/2} log(1 − t²/(z+k)²) dt`.
pub fn complex_log_gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re > 0.0) || !z.im.is_finite() || !z.re.is_finite() {
        return invalid(format!("log-gamma needs finite z with Re z > 0, got {z}"));
    }
    let h = z + 0.5;
    let mut acc = h * h.ln() - h + 0.5 * (2.0 * std::f64::consts::PI).ln();
    for k in 1..=QUADRATURE_TERMS {
        acc += half_interval_log_integral(z + k as f64);
    }
    // ∫_0^{1/2} log(1 − t²/u²) dt = −Σ_j 2^{−2j−1} u^{−2j} / (j (2j+1))
    let v = z + (QUADRATURE_TERMS + 1) as f64;
    for j in 1..=4i32 {
        let c = 0.5f64.powi(2 * j + 1) / (j * (2 * j + 1)) as f64;
        acc -= hurwitz_tail(v, 2 * j) * c;
    }
    Ok(acc)
}

/// `B = 3 (θρ + ½)² e^{3(θρ + ½)/2}`.
pub fn gamma_ratio_bound_constant(theta: f64, rho: f64) -> f64 {
    let a = theta * rho + 0.5;
    3.0 * a * a * (1.5 * a).exp()
}

/// `B n^{θx − 2} − |Γ(n + θw)/Γ(n + 1) − n^{θw − 1}|` with `x = Re w`.
///
/// Requires `n >= 2θρ + 1` and `|w| <= ρ`.
pub fn gamma_ratio_margin(n: u64, theta: f64, rho: f64, w: Complex64) -> Result<f64> {
    if !(theta > 0.0) || !(rho > 0.0) {
        return invalid(format!("need θ > 0 and ρ > 0, got θ = {theta}, ρ = {rho}"));
    }
    let nf = n as f64;
    if nf < 2.0 * theta * rho + 1.0 {
        return invalid(format!("need n >= 2θρ + 1 = {}, got n = {n}", 2.0 * theta * rho + 1.0));
    }
    if w.norm() > rho * (1.0 + 1e-12) {
        return invalid(format!("need |w| <= ρ = {rho}, got |w| = {}", w.norm()));
    }
    let tw = w * theta;
    let ratio = (complex_log_gamma(tw + (nf - 1.0))? - complex_log_gamma(Complex64::new(nf, 0.0))?).exp();
    let power = ((tw - 1.0) * nf.ln()).exp();
    let bound = gamma_ratio_bound_constant(theta, rho) * nf.powf(theta * w.re - 2.0);
    Ok(bound - (ratio - power).norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn quadrature_rule() {
        let rule = gauss_legendre_16();
        let w: f64 = rule.iter().map(|r| r.1).sum();
        assert!((w - 2.0).abs() < 1e-14);
        // exact for x^30
        let m: f64 = rule.iter().map(|&(x, w)| w * x.powi(30)).sum();
        assert!((m - 2.0 / 31.0).abs() < 1e-14);
    }

    #[test]
    fn real_values() {
        assert!(complex_log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-12);
        let half = complex_log_gamma(c(0.5, 0.0)).unwrap();
        // Γ(3/2) = √π / 2
        let exact = (std::f64::consts::PI.sqrt() / 2.0).ln();
        assert!((half.re - exact).abs() < 1e-12);
        assert!((half.re + 0.1207822).abs() < 1e-7);
        assert!((complex_log_gamma(c(4.0, 0.0)).unwrap().re - 24f64.ln()).abs() < 1e-12);
        assert!(complex_log_gamma(c(0.0, 1.0)).is_err());
    }

    #[test]
    fn recurrence_off_axis() {
        for re in [1.25, 2.0, 3.5, 7.0, 10.0] {
            for im in [-10.0, -3.0, -0.5, 0.5, 2.0, 10.0] {
                let z = c(re, im);
                let lhs = complex_log_gamma(z).unwrap();
                let rhs = z.ln() + complex_log_gamma(z - 1.0).unwrap();
                assert!((lhs - rhs).norm() < 1e-10, "z={z}");
            }
        }
    }

    #[test]
    fn reflection_on_imaginary_shift() {
        // |Γ(1 + iy)|² = π y / sinh(π y)
        let y = 1.3f64;
        let v = complex_log_gamma(c(1e-300, y));
        assert!(v.is_ok());
        let g = complex_log_gamma(c(1.0, y)).unwrap() - c(1.0, y).ln();
        let pi = std::f64::consts::PI;
        assert!((2.0 * g.re - (pi * y / (pi * y).sinh()).ln()).abs() < 1e-10);
    }

    #[test]
    fn gamma_ratio_preconditions() {
        assert!(gamma_ratio_margin(3, 1.0, 1.25, c(0.5, 0.0)).is_err());
        assert!(gamma_ratio_margin(4, 1.0, 1.25, c(1.3, 0.0)).is_err());
        assert!(gamma_ratio_margin(4, 1.0, 1.25, c(0.5, 0.5)).unwrap() >= 0.0);
    }
}
