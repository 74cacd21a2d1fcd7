//! Evaluation of residues `1 + Σ b_s z^s` and of the product form
//! `Π (1 + a z) e^{-a z}` over an alphabet.

use num_complex::{Complex, Complex64};

use super::alphabet::HeadTail;
use super::{Alphabet, ResidueCoeffs};
use crate::error::{invalid, Result};
use crate::scalar::Real;

/// `1 + Σ_{s=1}^r b_s z^s` by Horner's scheme.
pub fn residue_series_eval<T: Real>(rc: &ResidueCoeffs<T>, z: Complex<T>) -> Complex<T> {
    let mut acc = Complex::new(T::zero(), T::zero());
    for &b in rc.b().iter().rev() {
        acc = acc * z + Complex::new(b, T::zero());
    }
    acc * z + Complex::new(T::one(), T::zero())
}

/// Residue of an alphabet prepared for repeated evaluation on `|z| <= radius`.
///
/// Large weights are multiplied out literally; the remaining ones enter
/// through `exp(Σ_{k>=2} (−1)^{k−1} p_k z^k / k)` with tail power sums.
#[derive(Debug, Clone)]
pub struct ResidueProduct {
    radius: f64,
    split: HeadTail,
}

impl ResidueProduct {
    pub fn new(alphabet: &Alphabet, radius: f64) -> Result<Self> {
        if !(radius >= 0.0) || !radius.is_finite() {
            return invalid(format!("radius must be finite and nonnegative, got {radius}"));
        }
        Ok(Self {
            radius,
            split: alphabet.split(radius)?,
        })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        if z.norm() > self.radius * (1.0 + 1e-12) {
            return invalid(format!(
                "|z| = {} exceeds the prepared radius {}",
                z.norm(),
                self.radius
            ));
        }
        let one = Complex64::new(1.0, 0.0);
        let mut prod = one;
        for &(a, mult) in &self.split.head {
            let f = (one + z * a) * (-z * a).exp();
            prod *= if mult == 1 { f } else { f.powi(mult) };
        }
        let mut log = Complex64::new(0.0, 0.0);
        let mut zk = z;
        for (i, &pk) in self.split.tail_sums.iter().enumerate() {
            let k = i + 2;
            zk *= z;
            let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
            log += zk * (sign * pk / k as f64);
        }
        Ok(prod * log.exp())
    }
}

/// One-off evaluation of the alphabet residue at `z` (the residue in the
/// variable `w = 1 + z`).
pub fn residue_product_eval(alphabet: &Alphabet, z: Complex64, tolerance: f64) -> Result<Complex64> {
    let a = alphabet.clone().with_tolerance(tolerance);
    ResidueProduct::new(&a, z.norm())?.eval(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::{power_sums_finite, virtual_residue_coeffs};

    #[test]
    fn series_examples() {
        let rc = ResidueCoeffs::new(1.0, vec![0.0, -0.125]).unwrap();
        assert_eq!(residue_series_eval(&rc, Complex64::new(0.0, 0.0)), Complex64::new(1.0, 0.0));
        assert_eq!(residue_series_eval(&rc, Complex64::new(1.0, 0.0)), Complex64::new(0.875, 0.0));
    }

    #[test]
    fn series_matches_single_weight_product() {
        let p = power_sums_finite(&[0.5], 30).unwrap();
        let rc = virtual_residue_coeffs(&p, 30, 0.5).unwrap();
        let z = Complex64::new(-0.3, 0.0);
        let exact = (1.0 - 0.15) * 0.15f64.exp();
        assert!((residue_series_eval(&rc, z).re - exact).abs() < 1e-12);
    }

    #[test]
    fn product_at_zero_is_one() {
        for a in [Alphabet::harmonic(), Alphabet::omega_limit(), Alphabet::fq_limit(2).unwrap()] {
            let v = residue_product_eval(&a, Complex64::new(0.0, 0.0), 1e-12).unwrap();
            assert!((v - 1.0).norm() < 1e-15);
        }
    }

    #[test]
    fn finite_product_is_literal() {
        let a = Alphabet::finite(vec![0.3]).unwrap();
        let z = Complex64::new(0.7, -1.1);
        let v = residue_product_eval(&a, z, 1e-12).unwrap();
        let exact = (1.0 + z * 0.3) * (-z * 0.3).exp();
        assert!((v - exact).norm() < 1e-15);
    }

    #[test]
    fn harmonic_matches_partial_product() {
        let z = Complex64::new(-0.5, 0.0);
        let v = residue_product_eval(&Alphabet::harmonic(), z, 1e-12).unwrap();
        let mut log = 0.0;
        for n in 1..=1_000_000u32 {
            let a = 1.0 / n as f64;
            log += (1.0 - 0.5 * a).ln() + 0.5 * a;
        }
        assert!((v.re - log.exp()).abs() < 1e-6);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn radius_is_enforced() {
        let rp = ResidueProduct::new(&Alphabet::harmonic(), 1.0).unwrap();
        assert!(rp.eval(Complex64::new(1.5, 0.0)).is_err());
        assert!(rp.eval(Complex64::new(0.0, 1.0)).is_ok());
    }
}
