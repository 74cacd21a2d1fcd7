use std::f64::consts::{E, PI};

use crate::error::{invalid, Error, Result};

/// Universal constant `C` of the higher-order bounds (valid with `D = 4`).
pub const BOUND_C: f64 = 570.0;
pub const BOUND_D: f64 = 4.0;
/// `π / (2√3)`, the constant of the two-step estimate.
pub const TWO_STEP_COEFF: f64 = PI / (2.0 * 1.732_050_807_568_877_2);

fn inapplicable<T>(bound: &'static str, reason: String) -> Result<T> {
    Err(Error::Inapplicable { bound, reason })
}

/// Le Cam: `Σ p_i²`.
pub fn lecam_bound(weights: &[f64]) -> f64 {
    weights.iter().map(|p| p * p).sum()
}

/// Chen–Stein: `(1 − e^{−λ})/λ · Σ p_i²` with `λ = Σ p_i`.
pub fn chen_stein_bound(weights: &[f64]) -> Result<f64> {
    if weights.is_empty() {
        return invalid("Chen-Stein bound of an empty weight list");
    }
    let lambda: f64 = weights.iter().sum();
    if !(lambda > 0.0) {
        return inapplicable("chen-stein", format!("lambda = {lambda} must be positive"));
    }
    Ok(-(-lambda).exp_m1() / lambda * lecam_bound(weights))
}

/// `C ε^{r+1}` with `ε = D τ/√λ`, defined when `ε < 1`.
pub fn theorem_a_bound(lambda: f64, tau: f64, r: usize) -> Result<f64> {
    if !(lambda > 0.0) || !(tau >= 0.0) {
        return invalid(format!("need lambda > 0 and tau >= 0, got {lambda}, {tau}"));
    }
    let eps = BOUND_D * tau / lambda.sqrt();
    if eps >= 1.0 {
        return inapplicable("theorem-a", format!("epsilon = {eps} is not below 1"));
    }
    Ok(BOUND_C * eps.powi(r as i32 + 1))
}

fn eta(lambda: f64, sigma2: f64, name: &'static str) -> Result<f64> {
    if !(lambda > 0.0) || !(sigma2 >= 0.0) {
        return invalid(format!("need lambda > 0 and sigma2 >= 0, got {lambda}, {sigma2}"));
    }
    if lambda <= 16.0 * E * sigma2 {
        return inapplicable(
            name,
            format!("lambda = {lambda} does not exceed 16 e sigma^2 = {}", 16.0 * E * sigma2),
        );
    }
    Ok(BOUND_D * E.sqrt() * sigma2.sqrt() / lambda.sqrt())
}

/// `C η^{r+1}` with `η = 4√e σ/√λ`, defined when `λ > 16 e σ²`.
pub fn theorem_b_bound(lambda: f64, sigma2: f64, r: usize) -> Result<f64> {
    Ok(BOUND_C * eta(lambda, sigma2, "theorem-b")?.powi(r as i32 + 1))
}

/// Derived-scheme bound
/// `C η^{r+1} + (r² + (2λ+1) r) (Σ_{s=2}^r (2σ)^{s−2}) r_n`.
pub fn corollary_bound(lambda_n: f64, sigma2: f64, r: usize, tail_rn: f64) -> Result<f64> {
    if !(tail_rn >= 0.0) {
        return invalid(format!("tail r_n must be nonnegative, got {tail_rn}"));
    }
    let main = BOUND_C * eta(lambda_n, sigma2, "corollary")?.powi(r as i32 + 1);
    let two_sigma = 2.0 * sigma2.sqrt();
    let geometric: f64 = (2..=r).map(|s| two_sigma.powi(s as i32 - 2)).sum();
    let rf = r as f64;
    Ok(main + (rf * rf + (2.0 * lambda_n + 1.0) * rf) * geometric * tail_rn)
}

/// `C (4√e σ/√λ)^{r+1} + ε_n (ρ/(ρ−1) + λ)`, defined when `√λ > 4√e σ` and `ρ > 1`.
pub fn theorem_c_bound(lambda_n: f64, sigma2: f64, r: usize, eps_n: f64, rho: f64) -> Result<f64> {
    if !(eps_n >= 0.0) {
        return invalid(format!("eps_n must be nonnegative, got {eps_n}"));
    }
    if !(rho > 1.0) {
        return inapplicable("theorem-c", format!("rho = {rho} must exceed 1"));
    }
    let main = BOUND_C * eta(lambda_n, sigma2, "theorem-c")?.powi(r as i32 + 1);
    Ok(main + eps_n * (rho / (rho - 1.0) + lambda_n))
}

/// `‖ψ−χ‖/2 + π/(2√3) (‖ψ′−χ′‖ + λ ‖ψ−χ‖)`.
pub fn two_step_bound(psi_diff_sup: f64, psi_prime_diff_sup: f64, lambda: f64) -> Result<f64> {
    if !(psi_diff_sup >= 0.0) || !(psi_prime_diff_sup >= 0.0) || !(lambda >= 0.0) {
        return invalid("two-step bound needs nonnegative inputs");
    }
    Ok(psi_diff_sup / 2.0 + TWO_STEP_COEFF * (psi_prime_diff_sup + lambda * psi_diff_sup))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_bounds() {
        assert_eq!(lecam_bound(&[0.5, 0.5]), 0.5);
        assert!((lecam_bound(&[1.0, 0.5, 1.0 / 3.0]) - 49.0 / 36.0).abs() < 1e-15);
        assert_eq!(lecam_bound(&[]), 0.0);
        let cs = chen_stein_bound(&[0.5]).unwrap();
        assert!((cs - (1.0 - (-0.5f64).exp()) / 0.5 * 0.25).abs() < 1e-16);
        assert!((cs - 0.196_734_7).abs() < 1e-7);
        assert!(chen_stein_bound(&[]).is_err());
        for w in [vec![0.5], vec![0.1, 0.9, 0.3], vec![1.0; 5]] {
            assert!(chen_stein_bound(&w).unwrap() <= lecam_bound(&w));
        }
    }

    #[test]
    fn chen_stein_large_lambda_limit() {
        // λ = 10⁴, σ² = 1: bound/(σ²/λ) = 1 − e^{−λ}
        let lambda = 1e4f64;
        let factor = -(-lambda).exp_m1() / lambda;
        assert!((factor * lambda - 1.0).abs() < 1e-3);
    }

    #[test]
    fn theorem_a_values() {
        let a = theorem_a_bound(1e4, 1.0, 3).unwrap();
        assert!((a - 570.0 * 0.04f64.powi(4)).abs() < 1e-15);
        assert!((a - 1.4592e-3).abs() < 1e-12);
        assert!(matches!(theorem_a_bound(16.0, 1.0, 2), Err(Error::Inapplicable { .. })));
        let mut prev = f64::INFINITY;
        for r in 1..20 {
            let b = theorem_a_bound(100.0, 1.0, r).unwrap();
            assert!(b < prev);
            prev = b;
        }
    }

    #[test]
    fn theorem_b_values() {
        let b = theorem_b_bound(1e4, 1.0, 3).unwrap();
        assert!((b - 570.0 * (4.0 * E.sqrt() / 100.0).powi(4)).abs() < 1e-15);
        assert!((b - 0.010_782).abs() < 1e-6);
        assert!(theorem_b_bound(16.0 * E, 1.0, 3).is_err());
        for r in 1..8 {
            let a = theorem_a_bound(1e4, E.sqrt() * 1.5, r).unwrap();
            let b = theorem_b_bound(1e4, 2.25, r).unwrap();
            assert!((a - b).abs() <= 1e-15 * a);
        }
    }

    #[test]
    fn corollary_values() {
        let b1 = theorem_b_bound(500.0, 2.0, 1).unwrap();
        assert_eq!(corollary_bound(500.0, 2.0, 1, 0.3).unwrap(), b1);
        let b2 = theorem_b_bound(500.0, 2.0, 2).unwrap();
        let c2 = corollary_bound(500.0, 2.0, 2, 1e-3).unwrap();
        assert!((c2 - b2 - (4.0 + 1001.0 * 2.0) * 1e-3).abs() < 1e-12);
        assert_eq!(corollary_bound(500.0, 2.0, 4, 0.0).unwrap(), theorem_b_bound(500.0, 2.0, 4).unwrap());
    }

    #[test]
    fn theorem_c_values() {
        assert_eq!(
            theorem_c_bound(1e4, 1.0, 2, 0.0, 2.0).unwrap(),
            theorem_b_bound(1e4, 1.0, 2).unwrap()
        );
        let b = theorem_b_bound(1e4, 1.0, 1).unwrap();
        let far = theorem_c_bound(1e4, 1.0, 1, 1e-6, 1e6).unwrap() - b;
        assert!((far / (1e-6 * (1.0 + 1e4)) - 1.0).abs() < 1e-5);
        // r = 1: 570 η² with η = 4√e/100, plus 10⁻⁶ (2 + 10⁴)
        let eta = 4.0 * E.sqrt() / 100.0;
        let c = theorem_c_bound(1e4, 1.0, 1, 1e-6, 2.0).unwrap();
        assert!((c - (570.0 * eta * eta + 1e-6 * 10_002.0)).abs() < 1e-12);
        assert!((570.0 * eta * eta - 2.479_1).abs() < 1e-4);
        assert!(theorem_c_bound(1e4, 1.0, 1, 1e-6, 1.0).is_err());
    }

    #[test]
    fn two_step_values() {
        assert_eq!(two_step_bound(0.0, 0.0, 3.0).unwrap(), 0.0);
        assert_eq!(two_step_bound(0.4, 0.0, 0.0).unwrap(), 0.2);
        assert!(TWO_STEP_COEFF <= 0.9069);
        assert!(two_step_bound(-1.0, 0.0, 0.0).is_err());
    }
}
