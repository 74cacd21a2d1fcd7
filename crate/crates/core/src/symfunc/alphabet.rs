use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{virtual_residue_coeffs, PowerSums, ResidueCoeffs};
use crate::arith::{irreducible_weight, primes_up_to};
use crate::error::{invalid, Error, Result};
use crate::scalar::Compensated;
use crate::zeta::{hurwitz_zeta, inverse_power_sum, prime_zeta, riemann_zeta, Estimate};

pub const DEFAULT_TOLERANCE: f64 = 1e-12;

/// Largest prime enumerated explicitly when splitting the prime part of the
/// ω alphabet; beyond it only `k <= 3` tails are non-negligible.
const PRIME_TAIL_SIEVE: usize = 100_000;

/// Cap on the number of explicit factors in a head/tail split.
const MAX_HEAD: usize = 1_000_000;

/// The families of (possibly infinite) alphabets used by the models.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AlphabetKind {
    /// Finitely many weights in `[0, 1]`.
    Finite { weights: Vec<f64> },
    /// `{θ/(θ + n − 1) : n >= 1}`, limit of Ewens cycle counts.
    EwensLimit { theta: f64 },
    /// `{1/n : n >= 1}`.
    Harmonic,
    /// `{1/n} ⊔ {1/p : p prime}`, limit of the number of prime divisors.
    OmegaLimit,
    /// `{1/n} ⊔ {q^{-deg P} : P irreducible over F_q}`.
    FqLimit { q: u64 },
}

/// An alphabet together with the truncation tolerance of its infinite sums.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Alphabet {
    pub kind: AlphabetKind,
    pub tolerance: f64,
}

impl Alphabet {
    pub fn new(kind: AlphabetKind) -> Result<Self> {
        match &kind {
            AlphabetKind::Finite { weights } => {
                if weights.is_empty() {
                    return invalid("finite alphabet needs at least one weight");
                }
                if let Some(w) = weights.iter().find(|w| !(0.0..=1.0).contains(*w)) {
                    return invalid(format!("weight {w} outside [0, 1]"));
                }
            }
            AlphabetKind::EwensLimit { theta } => {
                if !(*theta > 0.0) || !theta.is_finite() {
                    return invalid(format!("theta must be positive, got {theta}"));
                }
            }
            AlphabetKind::FqLimit { q } => {
                if crate::arith::prime_power(*q).is_none() {
                    return invalid(format!("q = {q} is not a prime power"));
                }
            }
            AlphabetKind::Harmonic | AlphabetKind::OmegaLimit => {}
        }
        Ok(Self {
            kind,
            tolerance: DEFAULT_TOLERANCE,
        })
    }

    pub fn finite(weights: Vec<f64>) -> Result<Self> {
        Self::new(AlphabetKind::Finite { weights })
    }

    pub fn harmonic() -> Self {
        Self::new(AlphabetKind::Harmonic).expect("valid")
    }

    pub fn ewens_limit(theta: f64) -> Result<Self> {
        Self::new(AlphabetKind::EwensLimit { theta })
    }

    pub fn omega_limit() -> Self {
        Self::new(AlphabetKind::OmegaLimit).expect("valid")
    }

    pub fn fq_limit(q: u64) -> Result<Self> {
        Self::new(AlphabetKind::FqLimit { q })
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.kind, AlphabetKind::Finite { .. })
    }

    /// Power sums `p_1..p_kmax`. For infinite alphabets `p_1` diverges and is
    /// reported as `+∞`; only `k >= 2` is meaningful there.
    pub fn power_sums(&self, kmax: usize) -> Result<PowerSums<f64>> {
        match &self.kind {
            AlphabetKind::Finite { weights } => power_sums_finite(weights, kmax),
            _ => power_sums_infinite(self, kmax),
        }
    }

    /// `σ² = p_2(A)`.
    pub fn sigma2(&self) -> Result<f64> {
        Ok(self.power_sums(2)?.sigma2())
    }

    /// Virtual-alphabet residue coefficients `b_s = e_s(A')`, `s <= r`.
    pub fn residue_coeffs(&self, r: usize, lambda: f64) -> Result<ResidueCoeffs<f64>> {
        let ps = self.power_sums(r.max(2))?;
        virtual_residue_coeffs(&ps, r, lambda)
    }

    /// Splits the alphabet into explicit head factors `(a, multiplicity)` with
    /// `a · radius > 1/4` and a tail described by its power sums, so that the
    /// logarithmic series of the tail converges geometrically for `|z| <= radius`.
    pub(crate) fn split(&self, radius: f64) -> Result<HeadTail> {
        let quarter = 0.25;
        let mut head: Vec<(f64, i32)> = Vec::new();
        let mut tails: Vec<Box<dyn Fn(u32) -> Result<Estimate>>> = Vec::new();
        let mut max_tail_weight: f64 = 0.0;
        let tol = self.tolerance;

        let harmonic_head = |head: &mut Vec<(f64, i32)>| -> Result<u64> {
            let n0 = (4.0 * radius).floor() as u64;
            if n0 as usize > MAX_HEAD {
                return Err(Error::DivergentTail { radius });
            }
            head.extend((1..=n0).map(|n| (1.0 / n as f64, 1)));
            Ok(n0)
        };

        match &self.kind {
            AlphabetKind::Finite { weights } => {
                head.extend(weights.iter().map(|&w| (w, 1)));
            }
            AlphabetKind::Harmonic => {
                let n0 = harmonic_head(&mut head)?;
                max_tail_weight = 1.0 / (n0 + 1) as f64;
                tails.push(Box::new(move |k| Ok(hurwitz_zeta(k, (n0 + 1) as f64))));
            }
            AlphabetKind::EwensLimit { theta } => {
                let theta = *theta;
                let mut n = 1u64;
                while theta * radius / (theta + n as f64 - 1.0) > quarter {
                    head.push((theta / (theta + n as f64 - 1.0), 1));
                    n += 1;
                    if head.len() > MAX_HEAD {
                        return Err(Error::DivergentTail { radius });
                    }
                }
                let a = theta + n as f64 - 1.0;
                max_tail_weight = theta / a;
                tails.push(Box::new(move |k| Ok(inverse_power_sum(k, a, theta))));
            }
            AlphabetKind::OmegaLimit => {
                let n0 = harmonic_head(&mut head)?;
                tails.push(Box::new(move |k| Ok(hurwitz_zeta(k, (n0 + 1) as f64))));
                let sieve = PRIME_TAIL_SIEVE.max(n0 as usize + 1);
                let primes = primes_up_to(sieve);
                let split_at = primes.partition_point(|&p| p <= n0);
                head.extend(primes[..split_at].iter().map(|&p| (1.0 / p as f64, 1)));
                max_tail_weight = 1.0 / (n0 + 1) as f64;
                tails.push(Box::new(move |k| prime_tail(&primes, split_at, k, tol)));
            }
            AlphabetKind::FqLimit { q } => {
                let q = *q;
                let n0 = harmonic_head(&mut head)?;
                tails.push(Box::new(move |k| Ok(hurwitz_zeta(k, (n0 + 1) as f64))));
                let mut m = 1u64;
                while radius * (q as f64).powi(-(m as i32)) > quarter {
                    let mult = irreducible_weight(q, m, 0).round();
                    if mult > MAX_HEAD as f64 {
                        return Err(Error::DivergentTail { radius });
                    }
                    head.push(((q as f64).powi(-(m as i32)), mult as i32));
                    m += 1;
                }
                max_tail_weight = (1.0 / (n0 + 1) as f64).max((q as f64).powi(-(m as i32)));
                tails.push(Box::new(move |k| Ok(irreducible_tail(q, m, k))));
            }
        }

        // Tail power sums p_2..p_K with K chosen so the omitted log-series
        // terms fall below the tolerance.
        let mut tail_sums = Vec::new();
        if !tails.is_empty() {
            let ratio = max_tail_weight * radius;
            debug_assert!(ratio <= quarter + 1e-12);
            let mut k = 2u32;
            loop {
                let mut acc = Compensated::new();
                let mut err = 0.0;
                for t in &tails {
                    let e = t(k)?;
                    acc.add(e.value);
                    err += e.error;
                }
                let pk = acc.value();
                if err * radius.powi(k as i32) > tol {
                    return Err(Error::ToleranceUnreachable {
                        requested: tol,
                        achievable: err * radius.powi(k as i32),
                    });
                }
                tail_sums.push(pk);
                // every later term is at most this one times ratio^j
                let term = pk * radius.powi(k as i32) / k as f64;
                if term * (1.0 / (1.0 - ratio)) < tol / 10.0 || k > 400 {
                    break;
                }
                k += 1;
            }
        }
        Ok(HeadTail { head, tail_sums })
    }

    /// Short name used in configs and reports.
    pub fn name(&self) -> String {
        match &self.kind {
            AlphabetKind::Finite { weights } => format!("finite({})", weights.len()),
            AlphabetKind::EwensLimit { theta } => format!("ewens:{theta}"),
            AlphabetKind::Harmonic => "harmonic".to_string(),
            AlphabetKind::OmegaLimit => "omega".to_string(),
            AlphabetKind::FqLimit { q } => format!("fq:{q}"),
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Alphabet {
    type Err = Error;

    /// Parses `harmonic`, `omega`, `ewens:<theta>` or `fq:<q>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        let parse_err = || Error::Parse(format!("unrecognised alphabet `{s}`"));
        match (head, arg) {
            ("harmonic", None) => Ok(Self::harmonic()),
            ("omega", None) => Ok(Self::omega_limit()),
            ("ewens", Some(a)) => Self::ewens_limit(a.parse().map_err(|_| parse_err())?),
            ("fq", Some(a)) => Self::fq_limit(a.parse().map_err(|_| parse_err())?),
            _ => Err(parse_err()),
        }
    }
}

/// Head factors and tail power sums `p_2, p_3, ...` (index 0 is `p_2`).
#[derive(Debug, Clone)]
pub(crate) struct HeadTail {
    pub head: Vec<(f64, i32)>,
    pub tail_sums: Vec<f64>,
}

fn prime_tail(primes: &[u64], split_at: usize, k: u32, tol: f64) -> Result<Estimate> {
    let ki = k as i32;
    let explicit = primes[split_at..]
        .iter()
        .map(|&p| (p as f64).powi(-ki))
        .collect::<Compensated<f64>>()
        .value();
    let last = *primes.last().expect("nonempty sieve") as f64;
    let beyond_bound = last.powf(1.0 - k as f64) / (k as f64 - 1.0);
    if beyond_bound < 1e-18 {
        return Ok(Estimate {
            value: explicit,
            error: beyond_bound + 4.0 * f64::EPSILON * explicit,
        });
    }
    // P(k) minus everything up to the sieve limit
    let full = prime_zeta(k, tol.min(1e-15))?;
    let upto = primes
        .iter()
        .map(|&p| (p as f64).powi(-ki))
        .collect::<Compensated<f64>>()
        .value();
    let beyond = (full.value - upto).max(0.0);
    Ok(Estimate {
        value: explicit + beyond,
        error: full.error + 4.0 * f64::EPSILON * full.value,
    })
}

/// `Σ_{m >= m0} I_q(m) q^{-k m}`.
fn irreducible_tail(q: u64, m0: u64, k: u32) -> Estimate {
    let mut acc = Compensated::new();
    let ratio = (q as f64).powf(1.0 - k as f64);
    let mut m = m0;
    loop {
        let t = irreducible_weight(q, m, k);
        acc.add(t);
        // I_q(m) q^{-km} <= q^{m(1-k)} / m
        let bound = ratio.powi(m as i32 + 1) / (m + 1) as f64 / (1.0 - ratio);
        if bound < 0.1 * f64::EPSILON * acc.value() || m > 10_000 {
            let value = acc.value();
            return Estimate {
                value,
                error: bound + 4.0 * f64::EPSILON * value,
            };
        }
        m += 1;
    }
}

/// Power sums of a finite list of weights.
pub fn power_sums_finite(weights: &[f64], kmax: usize) -> Result<PowerSums<f64>> {
    if weights.is_empty() {
        return invalid("power sums of an empty weight list");
    }
    if kmax < 2 {
        return invalid(format!("kmax must be >= 2, got {kmax}"));
    }
    let mut acc = vec![Compensated::new(); kmax];
    for &w in weights {
        let mut pw = 1.0;
        for slot in acc.iter_mut() {
            pw *= w;
            slot.add(pw);
        }
    }
    PowerSums::new(acc.into_iter().map(|c| c.value()).collect())
}

/// Power sums `p_2..p_kmax` of an infinite alphabet, each within the
/// alphabet's tolerance. `p_1` diverges and is reported as `+∞`.
pub fn power_sums_infinite(alphabet: &Alphabet, kmax: usize) -> Result<PowerSums<f64>> {
    if kmax < 2 {
        return invalid(format!("kmax must be >= 2, got {kmax}"));
    }
    let tol = alphabet.tolerance;
    if !(tol > 0.0) {
        return invalid("tolerance must be positive");
    }
    let mut values = vec![f64::INFINITY];
    for k in 2..=kmax as u32 {
        let est = match &alphabet.kind {
            AlphabetKind::Finite { .. } => {
                return invalid("power_sums_infinite called on a finite alphabet")
            }
            AlphabetKind::Harmonic => riemann_zeta(k),
            AlphabetKind::EwensLimit { theta } => inverse_power_sum(k, *theta, *theta),
            AlphabetKind::OmegaLimit => {
                let z = riemann_zeta(k);
                let p = prime_zeta(k, tol / 2.0)?;
                Estimate {
                    value: z.value + p.value,
                    error: z.error + p.error,
                }
            }
            AlphabetKind::FqLimit { q } => {
                let z = riemann_zeta(k);
                let t = irreducible_tail(*q, 1, k);
                Estimate {
                    value: z.value + t.value,
                    error: z.error + t.error,
                }
            }
        };
        if est.error > tol {
            return Err(Error::ToleranceUnreachable {
                requested: tol,
                achievable: est.error,
            });
        }
        values.push(est.value);
    }
    PowerSums::new(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn finite_examples() {
        let ps = power_sums_finite(&[0.5], 4).unwrap();
        assert_eq!(ps.values(), &[0.5, 0.25, 0.125, 0.0625]);
        let ps = power_sums_finite(&[1.0, 1.0, 1.0], 2).unwrap();
        assert_eq!(ps.values(), &[3.0, 3.0]);
        assert!(power_sums_finite(&[], 3).is_err());
        assert!(power_sums_finite(&[0.5], 1).is_err());
    }

    #[test]
    fn harmonic_partial_sums_approach_zeta2() {
        let n = 5000;
        let w: Vec<f64> = (1..=n).map(|i| 1.0 / i as f64).collect();
        let p2 = *power_sums_finite(&w, 2).unwrap().get(2);
        let z2 = PI * PI / 6.0;
        assert!(z2 - p2 > 0.0 && z2 - p2 < 1.0 / n as f64);
    }

    #[test]
    fn ewens_one_is_harmonic() {
        let h = Alphabet::harmonic().power_sums(12).unwrap();
        let e = Alphabet::ewens_limit(1.0).unwrap().power_sums(12).unwrap();
        for k in 2..=12 {
            assert!((h.get(k) - e.get(k)).abs() < 1e-13);
        }
    }

    #[test]
    fn infinite_power_sums_decrease() {
        for a in [
            Alphabet::harmonic(),
            Alphabet::omega_limit(),
            Alphabet::fq_limit(3).unwrap(),
            Alphabet::ewens_limit(2.5).unwrap(),
            Alphabet::ewens_limit(0.3).unwrap(),
        ] {
            let ps = a.power_sums(10).unwrap();
            for k in 2..10 {
                assert!(*ps.get(k) > 0.0);
                assert!(ps.get(k + 1) <= ps.get(k), "{a}: k={k}");
            }
        }
    }

    #[test]
    fn tolerance_unreachable_is_reported() {
        let a = Alphabet::harmonic().with_tolerance(1e-30);
        assert!(matches!(
            a.power_sums(3),
            Err(Error::ToleranceUnreachable { .. })
        ));
    }

    #[test]
    fn rejects_invalid_alphabets() {
        assert!(Alphabet::finite(vec![]).is_err());
        assert!(Alphabet::finite(vec![1.5]).is_err());
        assert!(Alphabet::ewens_limit(0.0).is_err());
        assert!(Alphabet::fq_limit(6).is_err());
        assert!(power_sums_infinite(&Alphabet::finite(vec![0.5]).unwrap(), 3).is_err());
    }

    #[test]
    fn parse_names() {
        assert_eq!("harmonic".parse::<Alphabet>().unwrap(), Alphabet::harmonic());
        assert_eq!(
            "ewens:2".parse::<Alphabet>().unwrap(),
            Alphabet::ewens_limit(2.0).unwrap()
        );
        assert_eq!("fq:4".parse::<Alphabet>().unwrap().name(), "fq:4");
        assert!("fq:6".parse::<Alphabet>().is_err());
        assert!("nonsense".parse::<Alphabet>().is_err());
    }

    #[test]
    fn split_tail_matches_total() {
        // head + tail power sums reproduce the full power sums
        for a in [
            Alphabet::harmonic(),
            Alphabet::omega_limit(),
            Alphabet::fq_limit(2).unwrap(),
            Alphabet::ewens_limit(3.0).unwrap(),
        ] {
            let full = a.power_sums(4).unwrap();
            let split = a.split(2.0).unwrap();
            for k in 2..=4usize {
                let head: f64 = split
                    .head
                    .iter()
                    .map(|&(w, m)| m as f64 * w.powi(k as i32))
                    .sum();
                let total = head + split.tail_sums[k - 2];
                assert!((total - full.get(k)).abs() < 1e-11, "{a} k={k}");
            }
        }
    }
}
