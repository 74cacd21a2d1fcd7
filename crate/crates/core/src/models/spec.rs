use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{
    bernoulli_sum_pmf, bernoulli_sum_pmf_trimmed, ewens_weights, fq_factor_pmf, gamma_theta,
    omega_pmf, r_q, weighted_perm_cycle_pmf, MassFunction, Pmf, EULER_GAMMA,
};
use crate::arith::{binomial_f64, prime_power};
use crate::error::{invalid, Result};
use crate::scalar::{Compensated, Scalar};
use crate::symfunc::{Alphabet, ResidueCoeffs};

/// Above this many Bernoulli factors the float convolution drops negligible
/// masses at the window ends.
const TRIM_ABOVE: usize = 4096;
const TRIM_THRESHOLD: f64 = 1e-40;

/// Singularity data `(θ, K)` of a weighted-permutation model: the generating
/// series behaves like `θ log 1/(1 − z) + K` at `z = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Singularity {
    pub theta: f64,
    pub k: f64,
}

/// One of the model families together with its size parameter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum ModelSpec {
    BernoulliSum {
        weights: Vec<f64>,
    },
    Ewens {
        theta: f64,
        n: usize,
    },
    WeightedPerm {
        thetas: Vec<f64>,
        n: usize,
        #[serde(default)]
        singularity: Option<Singularity>,
    },
    FqPoly {
        q: u64,
        n: usize,
    },
    Omega {
        n: u64,
    },
}

impl ModelSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::BernoulliSum { weights } => {
                if let Some(w) = weights.iter().find(|w| !(0.0..=1.0).contains(*w)) {
                    return invalid(format!("Bernoulli weight {w} outside [0, 1]"));
                }
            }
            Self::Ewens { theta, n } => {
                if !(*theta > 0.0) || !theta.is_finite() {
                    return invalid(format!("theta must be positive, got {theta}"));
                }
                if *n == 0 {
                    return invalid("n must be at least 1");
                }
            }
            Self::WeightedPerm { thetas, n, .. } => {
                if thetas.len() < *n {
                    return invalid(format!("need {n} cycle weights, got {}", thetas.len()));
                }
                if thetas[..*n].iter().any(|t| !(*t > 0.0)) {
                    return invalid("cycle weights must be positive");
                }
            }
            Self::FqPoly { q, n } => {
                if prime_power(*q).is_none() {
                    return invalid(format!("q = {q} is not a prime power"));
                }
                if *n == 0 {
                    return invalid("n must be at least 1");
                }
            }
            Self::Omega { n } => {
                if *n == 0 {
                    return invalid("N must be at least 1");
                }
            }
        }
        Ok(())
    }

    /// Short family name used in reports.
    pub fn family(&self) -> &'static str {
        match self {
            Self::BernoulliSum { .. } => "bernoulli",
            Self::Ewens { .. } => "ewens",
            Self::WeightedPerm { .. } => "weighted_perm",
            Self::FqPoly { .. } => "fq",
            Self::Omega { .. } => "omega",
        }
    }

    /// The size parameter (number of weights, permutation size, degree, `N`).
    pub fn size(&self) -> u64 {
        match self {
            Self::BernoulliSum { weights } => weights.len() as u64,
            Self::Ewens { n, .. } | Self::WeightedPerm { n, .. } | Self::FqPoly { n, .. } => {
                *n as u64
            }
            Self::Omega { n } => *n,
        }
    }

    /// Weights of an exact Bernoulli-sum representation, when one exists.
    pub fn bernoulli_weights(&self) -> Option<Vec<f64>> {
        match self {
            Self::BernoulliSum { weights } => Some(weights.clone()),
            Self::Ewens { theta, n } => Some(ewens_weights(*theta, *n)),
            _ => None,
        }
    }

    /// Alphabet of the limiting residue, when known.
    pub fn limiting_alphabet(&self) -> Result<Option<Alphabet>> {
        Ok(match self {
            Self::BernoulliSum { weights } if !weights.is_empty() => {
                Some(Alphabet::finite(weights.clone())?)
            }
            Self::BernoulliSum { .. } | Self::WeightedPerm { .. } => None,
            Self::Ewens { theta, .. } => Some(Alphabet::ewens_limit(*theta)?),
            Self::FqPoly { q, .. } => Some(Alphabet::fq_limit(*q)?),
            Self::Omega { .. } => Some(Alphabet::omega_limit()),
        })
    }

    /// Law of the model in double precision.
    pub fn pmf(&self) -> Result<Pmf<f64>> {
        self.validate()?;
        match self {
            Self::BernoulliSum { .. } | Self::Ewens { .. } => {
                let w = self.bernoulli_weights().unwrap_or_default();
                if w.len() > TRIM_ABOVE {
                    bernoulli_sum_pmf_trimmed(&w, TRIM_THRESHOLD)
                } else {
                    bernoulli_sum_pmf(&w)
                }
            }
            Self::WeightedPerm { thetas, n, .. } => weighted_perm_cycle_pmf(thetas, *n),
            Self::FqPoly { q, n } => Ok(fq_factor_pmf(*q, *n)?.to_f64()),
            Self::Omega { n } => omega_pmf(*n),
        }
    }

    /// Law of the model in exact rational arithmetic (float parameters are
    /// taken at their exact binary values).
    pub fn exact_pmf(&self) -> Result<Pmf<BigRational>> {
        self.validate()?;
        let exact = |x: &f64| <BigRational as Scalar>::from_f64(*x);
        match self {
            Self::BernoulliSum { weights } => {
                bernoulli_sum_pmf(&weights.iter().map(exact).collect::<Vec<_>>())
            }
            Self::Ewens { theta, n } => super::ewens_cycle_pmf(exact(theta), *n),
            Self::WeightedPerm { thetas, n, .. } => {
                weighted_perm_cycle_pmf(&thetas.iter().map(exact).collect::<Vec<_>>(), *n)
            }
            Self::FqPoly { q, n } => fq_factor_pmf(*q, *n),
            Self::Omega { n } => omega_pmf(*n),
        }
    }

    /// Mod-Poisson parameter `λ_n` of the family.
    pub fn lambda(&self, tolerance: f64) -> Result<f64> {
        model_lambda(self, tolerance)
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::BernoulliSum { weights } => write!(f, "bernoulli(n={})", weights.len()),
            Self::Ewens { theta, n } => write!(f, "ewens(theta={theta};n={n})"),
            Self::WeightedPerm { n, .. } => write!(f, "weighted_perm(n={n})"),
            Self::FqPoly { q, n } => write!(f, "fq(q={q};n={n})"),
            Self::Omega { n } => write!(f, "omega(N={n})"),
        }
    }
}

/// `λ_n` for each family: `Σ p_i` for Bernoulli sums, `θ log n + γ_θ` for
/// Ewens, `θ log n + K + γ_θ` for weighted permutations with supplied
/// singularity data, `log n + R_q + γ` over `F_q` and `log log N + γ` for ω.
pub fn model_lambda(spec: &ModelSpec, tolerance: f64) -> Result<f64> {
    spec.validate()?;
    let lambda = match spec {
        ModelSpec::BernoulliSum { weights } => weights.iter().copied().collect::<Compensated<f64>>().value(),
        ModelSpec::Ewens { theta, n } => theta * (*n as f64).ln() + gamma_theta(*theta, tolerance)?,
        ModelSpec::WeightedPerm { n, singularity, .. } => match singularity {
            Some(s) => s.theta * (*n as f64).ln() + s.k + gamma_theta(s.theta, tolerance)?,
            None => {
                return invalid(
                    "weighted permutations need explicit singularity data (theta, K) for lambda",
                )
            }
        },
        ModelSpec::FqPoly { q, n } => (*n as f64).ln() + r_q(*q, tolerance)? + EULER_GAMMA,
        ModelSpec::Omega { n } => {
            if *n < 2 {
                return invalid("log log N is undefined for N < 2");
            }
            (*n as f64).ln().ln() + EULER_GAMMA
        }
    };
    if !(lambda > 0.0) {
        return invalid(format!("model parameter lambda = {lambda} is not positive"));
    }
    Ok(lambda)
}

/// `E[w^X] e^{−λ(w−1)}` for the law `pmf`.
pub fn empirical_residue(pmf: &impl MassFunction<f64>, lambda: f64, w: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &m in pmf.masses().iter().rev() {
        acc = acc * w + m;
    }
    acc * w.powu(pmf.offset() as u32) * (-(w - 1.0) * lambda).exp()
}

/// Taylor coefficients `b_1..b_r` of the residue `E[(1+z)^X] e^{−λz}` of a
/// finite law, from its binomial moments `E[C(X, m)]`.
pub fn empirical_residue_coeffs(
    pmf: &impl MassFunction<f64>,
    lambda: f64,
    r: usize,
) -> Result<ResidueCoeffs<f64>> {
    let binomial_moments: Vec<f64> = (0..=r)
        .map(|m| {
            pmf.masses()
                .iter()
                .enumerate()
                .map(|(i, &p)| binomial_f64((pmf.offset() + i) as u64, m as u64) * p)
                .collect::<Compensated<f64>>()
                .value()
        })
        .collect();
    let b = (1..=r)
        .map(|s| {
            let mut term = 1.0;
            let mut acc = Compensated::new();
            for j in 0..=s {
                if j > 0 {
                    term *= -lambda / j as f64;
                }
                acc.add(binomial_moments[s - j] * term);
            }
            acc.value()
        })
        .collect();
    ResidueCoeffs::new(lambda, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::{power_sums_finite, virtual_residue_coeffs};

    #[test]
    fn lambdas() {
        let b = ModelSpec::BernoulliSum {
            weights: vec![0.5, 0.5],
        };
        assert_eq!(model_lambda(&b, 1e-12).unwrap(), 1.0);
        let e = ModelSpec::Ewens { theta: 1.0, n: 100 };
        let l = model_lambda(&e, 1e-12).unwrap();
        assert!((l - (100f64.ln() + EULER_GAMMA)).abs() < 1e-12);
        let f = ModelSpec::FqPoly { q: 2, n: 10 };
        let l = model_lambda(&f, 1e-12).unwrap();
        assert!((l - (10f64.ln() + r_q(2, 1e-12).unwrap() + EULER_GAMMA)).abs() < 1e-15);
        let w = ModelSpec::WeightedPerm {
            thetas: vec![1.0; 5],
            n: 5,
            singularity: None,
        };
        assert!(model_lambda(&w, 1e-12).is_err());
        assert!(model_lambda(&ModelSpec::Omega { n: 1 }, 1e-12).is_err());
    }

    #[test]
    fn residue_of_single_bernoulli() {
        let pmf = bernoulli_sum_pmf(&[0.3]).unwrap();
        for w in [Complex64::new(0.4, 0.9), Complex64::new(-1.1, 0.2)] {
            let got = empirical_residue(&pmf, 0.3, w);
            let z = w - 1.0;
            let expect = (1.0 + z * 0.3) * (-z * 0.3).exp();
            assert!((got - expect).norm() < 1e-15);
        }
        assert_eq!(
            empirical_residue(&Pmf::<f64>::dirac(0), 0.0, Complex64::new(3.0, 1.0)),
            Complex64::new(1.0, 0.0)
        );
    }

    #[test]
    fn empirical_coeffs_match_virtual_alphabet() {
        let w = [0.1, 0.35, 0.2, 0.05, 0.4];
        let pmf = bernoulli_sum_pmf(&w).unwrap();
        let lambda: f64 = w.iter().sum();
        let emp = empirical_residue_coeffs(&pmf, lambda, 5).unwrap();
        let ps = power_sums_finite(&w, 5).unwrap();
        let vir = virtual_residue_coeffs(&ps, 5, lambda).unwrap();
        for s in 1..=5 {
            assert!((emp.coeff(s) - vir.coeff(s)).abs() < 1e-14, "s={s}");
        }
    }

    #[test]
    fn exact_and_float_agree() {
        let spec = ModelSpec::Ewens { theta: 1.5, n: 12 };
        let a = spec.pmf().unwrap();
        let b = spec.exact_pmf().unwrap().to_f64();
        for k in 0..13 {
            assert!((a.mass_at(k) - b.mass_at(k)).abs() < 1e-15);
        }
        assert_eq!(spec.to_string(), "ewens(theta=1.5;n=12)");
    }
}
