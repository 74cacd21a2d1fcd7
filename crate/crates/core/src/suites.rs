//! Property suites run by `modpoisson verify`. Each suite evaluates one
//! family of checkable statements and reports how many held.

use std::collections::BTreeMap;
use std::f64::consts::{E, PI};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::metrics::{chen_stein_bound, lecam_bound, verify_bounds, BoundKind, VerifyOptions};
use crate::models::{
    bernoulli_sum_pmf, ewens_cycle_pmf, fq_factor_counts, omega_table, weighted_perm_cycle_pmf,
    MassFunction, ModelSpec, Pmf,
};
use crate::oracle::{enumerate_fq_factor_counts, enumerate_permutation_cycles, omega_by_trial_division};
use crate::scalar::Scalar;
use crate::schemes::{charlier_delta, scheme_measure};
use crate::specialfn::{
    complex_log_gamma, cramer_bound_margin, gamma_ratio_margin, hermite, hermite_explicit,
    hermite_multiplication,
};
use crate::symfunc::{power_sums_finite, virtual_residue_coeffs, Alphabet};

const MAX_REPORTED_FAILURES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    TheoremB,
    ChenStein,
    Coefficients,
    Hermite,
    Charlier,
    GammaRatio,
    Rates,
    Oracles,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::TheoremB,
        Suite::ChenStein,
        Suite::Coefficients,
        Suite::Hermite,
        Suite::Charlier,
        Suite::GammaRatio,
        Suite::Rates,
        Suite::Oracles,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::TheoremB => "theorem-b",
            Suite::ChenStein => "chen-stein",
            Suite::Coefficients => "coefficients",
            Suite::Hermite => "hermite",
            Suite::Charlier => "charlier",
            Suite::GammaRatio => "gamma-ratio",
            Suite::Rates => "rates",
            Suite::Oracles => "oracles",
        }
    }

    /// Suites that draw random instances and therefore need a seed.
    pub fn is_randomized(self) -> bool {
        matches!(
            self,
            Suite::TheoremB | Suite::ChenStein | Suite::Coefficients | Suite::Oracles
        )
    }

    pub fn default_instances(self) -> Option<usize> {
        match self {
            Suite::TheoremB | Suite::ChenStein => Some(200),
            Suite::Coefficients => Some(500),
            Suite::Oracles => Some(20),
            _ => None,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, Default)]
pub struct SuiteConfig {
    pub seed: Option<u64>,
    pub instances: Option<usize>,
    pub tolerance: Option<f64>,
}

/// Summary of one suite run.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteOutcome {
    pub suite: String,
    pub seed: Option<u64>,
    pub instances: Option<usize>,
    pub checks: usize,
    pub failures: usize,
    pub passed: bool,
    /// Extreme values observed, keyed by what they measure.
    pub metrics: BTreeMap<String, f64>,
    pub failure_details: Vec<String>,
}

struct Tally {
    checks: usize,
    failures: usize,
    details: Vec<String>,
    metrics: BTreeMap<String, f64>,
}

impl Tally {
    fn new() -> Self {
        Self {
            checks: 0,
            failures: 0,
            details: Vec::new(),
            metrics: BTreeMap::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.details.len() < MAX_REPORTED_FAILURES {
                self.details.push(detail());
            }
        }
    }

    fn min(&mut self, key: &str, v: f64) {
        let e = self.metrics.entry(key.to_string()).or_insert(f64::INFINITY);
        *e = e.min(v);
    }

    fn max(&mut self, key: &str, v: f64) {
        let e = self.metrics.entry(key.to_string()).or_insert(f64::NEG_INFINITY);
        *e = e.max(v);
    }

    fn set(&mut self, key: &str, v: f64) {
        self.metrics.insert(key.to_string(), v);
    }

    fn absorb(&mut self, other: Tally) {
        self.checks += other.checks;
        self.failures += other.failures;
        for d in other.details {
            if self.details.len() < MAX_REPORTED_FAILURES {
                self.details.push(d);
            }
        }
        for (k, v) in other.metrics {
            if k.starts_with("min_") {
                self.min(&k, v);
            } else {
                self.max(&k, v);
            }
        }
    }

    fn finish(self, suite: Suite, seed: Option<u64>, instances: Option<usize>) -> SuiteOutcome {
        SuiteOutcome {
            suite: suite.name().to_string(),
            seed,
            instances,
            checks: self.checks,
            failures: self.failures,
            passed: self.failures == 0 && self.checks > 0,
            metrics: self.metrics,
            failure_details: self.details,
        }
    }
}

/// Runs `suite`. Randomized suites fail with an error when no seed is given.
pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Result<SuiteOutcome> {
    let instances = config.instances.or(suite.default_instances());
    let seed = if suite.is_randomized() {
        match config.seed {
            Some(s) => Some(s),
            None => return invalid(format!("suite '{suite}' draws random instances and needs --seed")),
        }
    } else {
        None
    };
    let tolerance = config.tolerance.unwrap_or(1e-12);
    let tally = match suite {
        Suite::TheoremB => theorem_b_suite(seed.unwrap_or(0), instances.unwrap_or(200), tolerance)?,
        Suite::ChenStein => chen_stein_suite(seed.unwrap_or(0), instances.unwrap_or(200), tolerance)?,
        Suite::Coefficients => coefficient_suite(seed.unwrap_or(0), instances.unwrap_or(500))?,
        Suite::Hermite => hermite_suite()?,
        Suite::Charlier => charlier_suite()?,
        Suite::GammaRatio => gamma_ratio_suite()?,
        Suite::Rates => rates_suite(tolerance)?,
        Suite::Oracles => oracle_suite(seed.unwrap_or(0), instances.unwrap_or(20))?,
    };
    Ok(tally.finish(suite, seed, instances))
}

/// Random Bernoulli weight vectors with `n <= 500` and `λ > 16 e σ²`.
pub fn random_bernoulli_instances(seed: u64, count: usize) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.random_range(1..=500usize);
        let pmax = 10f64.powf(rng.random_range(-3.0..0.0));
        let weights: Vec<f64> = (0..n).map(|_| pmax * (1.0 - rng.random::<f64>())).collect();
        let lambda: f64 = weights.iter().sum();
        let sigma2: f64 = weights.iter().map(|p| p * p).sum();
        if lambda > 16.0 * E * sigma2 {
            out.push(weights);
        }
    }
    out
}

fn verify_instance(weights: Vec<f64>, r_list: &[usize], which: &[BoundKind], tol: f64) -> Result<Tally> {
    let spec = ModelSpec::BernoulliSum { weights };
    let options = VerifyOptions {
        tolerance: tol,
        ..VerifyOptions::default()
    };
    let mut t = Tally::new();
    for row in verify_bounds(&spec, r_list, which, &options)? {
        t.check(row.holds == Some(true), || {
            format!(
                "{} r={} {}: tv={:e} bound={:?}",
                row.model, row.r, row.name, row.tv, row.bound
            )
        });
        if let Some(slack) = row.slack {
            t.min(&format!("min_slack_{}", row.name), slack);
        }
        t.max("max_tv", row.tv);
    }
    Ok(t)
}

fn theorem_b_suite(seed: u64, count: usize, tol: f64) -> Result<Tally> {
    let r_list: Vec<usize> = (1..=6).collect();
    let parts: Vec<Tally> = random_bernoulli_instances(seed, count)
        .into_par_iter()
        .map(|w| verify_instance(w, &r_list, &[BoundKind::TheoremB], tol))
        .collect::<Result<_>>()?;
    let mut t = Tally::new();
    parts.into_iter().for_each(|p| t.absorb(p));
    Ok(t)
}

fn chen_stein_suite(seed: u64, count: usize, tol: f64) -> Result<Tally> {
    let parts: Vec<Tally> = random_bernoulli_instances(seed, count)
        .into_par_iter()
        .map(|w| {
            let cs = chen_stein_bound(&w)?;
            let lc = lecam_bound(&w);
            let mut t = verify_instance(w, &[0], &[BoundKind::Lecam, BoundKind::ChenStein], tol)?;
            t.check(cs <= lc, || format!("chen-stein {cs:e} exceeds le cam {lc:e}"));
            Ok(t)
        })
        .collect::<Result<_>>()?;
    let mut t = Tally::new();
    parts.into_iter().for_each(|p| t.absorb(p));
    Ok(t)
}

fn coefficient_suite(seed: u64, count: usize) -> Result<Tally> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tally::new();
    for _ in 0..count {
        let n = rng.random_range(1..=20usize);
        let weights: Vec<f64> = (0..n).map(|_| 1.0 - rng.random::<f64>()).collect();
        let ps = power_sums_finite(&weights, 30)?;
        let sigma2 = *ps.get(2);
        let rc = virtual_residue_coeffs(&ps, 30, weights.iter().sum())?;
        for s in 1..=30 {
            let bound = (E * sigma2 / s as f64).powf(s as f64 / 2.0);
            let b = rc.coeff(s).abs();
            t.check(b <= bound + 1e-12, || format!("|b_{s}| = {b:e} > {bound:e} for {weights:?}"));
            if bound > 0.0 {
                t.max("max_ratio_to_bound", b / bound);
            }
        }
    }
    Ok(t)
}

fn hermite_suite() -> Result<Tally> {
    let mut t = Tally::new();
    let mut grid = vec![Complex64::new(0.0, 0.0)];
    for i in 1..=5 {
        for j in 0..12 {
            grid.push(Complex64::from_polar(i as f64, 2.0 * PI * (j as f64 + 0.25) / 12.0));
        }
    }
    grid.extend((-10..=10).map(|i| Complex64::new(i as f64 / 2.0, 0.0)));
    for m in 0..=30 {
        for &z in &grid {
            let h = hermite(m, z);
            let e = hermite_explicit(m, z)?;
            let rel = (h - e).norm() / h.norm().max(1.0);
            t.check(rel < 1e-9, || format!("explicit H_{m}({z}) off by {rel:e}"));
            t.max("max_explicit_rel_err", rel);
        }
    }
    for m in 0..=15 {
        for a in [0.5, 1.0, 2.0] {
            for i in 0..=32 {
                let x = -4.0 + i as f64 / 4.0;
                let lhs = hermite(m, a * x);
                let rel = (hermite_multiplication(m, a, x) - lhs).abs() / lhs.abs().max(1.0);
                t.check(rel < 1e-9, || format!("multiplication m={m} a={a} x={x}: {rel:e}"));
                t.max("max_multiplication_rel_err", rel);
            }
        }
    }
    for m in 1..=30 {
        for i in 0..=400 {
            let x = -10.0 + i as f64 / 20.0;
            let margin = cramer_bound_margin(m, Complex64::new(x, 0.0))?;
            t.check(margin >= 0.0, || format!("real Cramér m={m} x={x}: margin {margin:e}"));
            t.min("min_real_cramer_margin", margin);
        }
    }
    for m in 1..=20 {
        for i in -20..=20 {
            for j in -20..=20 {
                let z = Complex64::new(i as f64 / 4.0, j as f64 / 4.0);
                if j == 0 || z.norm() > 5.0 {
                    continue;
                }
                let margin = cramer_bound_margin(m, z)?;
                t.check(margin >= 0.0, || format!("complex Cramér m={m} z={z}: margin {margin:e}"));
                t.min("min_complex_cramer_margin", margin);
            }
        }
    }
    Ok(t)
}

fn charlier_suite() -> Result<Tally> {
    let mut t = Tally::new();
    let alphabet = Alphabet::harmonic();
    for lambda in [1.0, 5.0, 20.0, 50.0] {
        let rc = alphabet.residue_coeffs(9, lambda)?;
        let measures = (0..=9)
            .map(|r| scheme_measure(&rc.truncated(r)))
            .collect::<Result<Vec<_>>>()?;
        for s in 0..=8 {
            let (lo, hi) = (&measures[s], &measures[s + 1]);
            let b_next = rc.coeff(s + 1);
            for k in lo.offset().min(hi.offset())..hi.support_end().max(lo.support_end()) {
                let diff = hi.mass_at(k) - lo.mass_at(k);
                let err = (diff - charlier_delta(lambda, s, b_next, k)).abs();
                t.check(err < 1e-12, || format!("λ={lambda} s={s} k={k}: {err:e}"));
                t.max("max_abs_err", err);
            }
        }
    }
    Ok(t)
}

fn gamma_ratio_suite() -> Result<Tally> {
    let mut t = Tally::new();
    let (theta, rho) = (1.0, 1.25);
    let grid: Vec<Complex64> = (0..8)
        .flat_map(|i| {
            (0..8).map(move |j| {
                Complex64::from_polar(rho * (i + 1) as f64 / 8.0, 2.0 * PI * (j as f64 + 0.5 * i as f64) / 8.0)
            })
        })
        .collect();
    for n in 5..=100u64 {
        for &w in &grid {
            let margin = gamma_ratio_margin(n, theta, rho, w)?;
            t.check(margin >= 0.0, || format!("n={n} w={w}: margin {margin:e}"));
            t.min("min_margin", margin);
        }
    }
    for i in 0..=9 {
        for j in -5..=5 {
            let z = Complex64::new(1.0 + i as f64, 2.0 * j as f64);
            let lhs = complex_log_gamma(z + 1.0)?;
            let rhs = (z + 1.0).ln() + complex_log_gamma(z)?;
            let err = (lhs - rhs).norm();
            t.check(err < 1e-10, || format!("recurrence at z={z}: {err:e}"));
            t.max("max_recurrence_err", err);
        }
    }
    Ok(t)
}

/// `ε_n = max_{|w|=1} |E[w^{C_n}] e^{−λ_n(w−1)} − 𝔈(A', w−1)|` for uniform
/// permutations, on `grid` equally spaced points.
pub fn ewens_residue_error(n: usize, grid: usize, tol: f64) -> Result<f64> {
    let spec = ModelSpec::Ewens { theta: 1.0, n };
    let lambda = spec.lambda(tol)?;
    crate::metrics::residue_sup_distance(&spec.pmf()?, lambda, &Alphabet::harmonic(), 1.0, grid)
}

fn rates_suite(tol: f64) -> Result<Tally> {
    let mut t = Tally::new();
    let eps: Vec<f64> = [200, 400, 800, 1600]
        .par_iter()
        .map(|&n| ewens_residue_error(n, 16, tol))
        .collect::<Result<_>>()?;
    for (i, n) in [200, 400, 800].iter().enumerate() {
        let ratio = eps[i + 1] / eps[i];
        t.check((0.3..=0.7).contains(&ratio), || format!("eps_{}/eps_{n} = {ratio}", 2 * n));
        t.set(&format!("ratio_{n}"), ratio);
        t.set(&format!("eps_{n}"), eps[i]);
    }
    t.set("eps_1600", eps[3]);
    Ok(t)
}

fn close(a: &Pmf<f64>, b: &Pmf<f64>, tol: f64) -> (bool, f64) {
    let lo = a.offset().min(b.offset());
    let hi = a.support_end().max(b.support_end());
    let err = (lo..hi)
        .map(|k| (a.mass_at(k) - b.mass_at(k)).abs())
        .fold(0.0, f64::max);
    (err <= tol, err)
}

fn oracle_suite(seed: u64, count: usize) -> Result<Tally> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tally::new();
    for _ in 0..count {
        let n = rng.random_range(1..=20usize);
        let weights: Vec<BigRational> = (0..n)
            .map(|_| BigRational::new(BigInt::from(rng.random_range(0..=1000)), BigInt::from(1000)))
            .collect();
        let exact = bernoulli_sum_pmf(&weights)?.to_f64();
        let float = bernoulli_sum_pmf(&weights.iter().map(Scalar::to_f64).collect::<Vec<_>>())?;
        let (ok, err) = close(&exact, &float, 1e-12);
        t.check(ok, || format!("rational vs float Bernoulli, n={n}: {err:e}"));
        t.max("max_rational_float_err", err);
    }
    for n in 1..=30 {
        let ewens = ewens_cycle_pmf(1.0, n)?;
        let feller: Vec<f64> = (1..=n).map(|i| 1.0 / i as f64).collect();
        let (ok, err) = close(&ewens, &bernoulli_sum_pmf(&feller)?, 1e-12);
        t.check(ok, || format!("ewens vs Feller coupling, n={n}: {err:e}"));
        let (ok2, err2) = close(&ewens, &weighted_perm_cycle_pmf(&vec![1.0; n], n)?, 1e-12);
        t.check(ok2, || format!("ewens vs cycle-index recursion, n={n}: {err2:e}"));
        t.max("max_ewens_err", err.max(err2));
    }
    for _ in 0..count {
        let n = rng.random_range(1..=7usize);
        let theta: Vec<f64> = (0..n).map(|_| 0.1 + 2.9 * rng.random::<f64>()).collect();
        let (ok, err) = close(
            &weighted_perm_cycle_pmf(&theta, n)?,
            &enumerate_permutation_cycles(&theta, n)?,
            1e-12,
        );
        t.check(ok, || format!("weighted permutations vs enumeration θ={theta:?}: {err:e}"));
        t.max("max_weighted_perm_err", err);
    }
    for (q, nmax) in [(2u64, 10usize), (3, 6)] {
        for n in 1..=nmax {
            let fast = fq_factor_counts(q, n)?;
            let brute = enumerate_fq_factor_counts(q, n)?;
            let same = fast.len() == brute.len() && fast.iter().zip(&brute).all(|(a, b)| *a == BigInt::from(*b));
            t.check(same, || format!("F_{q} degree {n}: {fast:?} vs {brute:?}"));
        }
    }
    let table = omega_table(1_000_000);
    for m in omega_spot_checks() {
        let (fast, slow) = (table[m as usize] as u32, omega_by_trial_division(m));
        t.check(fast == slow, || format!("ω({m}): sieve {fast}, trial division {slow}"));
    }
    Ok(t)
}

/// Integers whose distinct prime factors are checked against trial division.
pub fn omega_spot_checks() -> [u64; 20] {
    [
        1, 2, 12, 30, 97, 120, 210, 1024, 2310, 9973, 30030, 65536, 99991, 123456, 510510, 524287,
        720720, 857375, 999983, 1_000_000,
    ]
}
