use std::f64::consts::{E, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    chen_stein_bound, corollary_bound, lecam_bound, theorem_a_bound, theorem_b_bound,
    theorem_c_bound, total_variation,
};
use crate::error::{Error, Result};
use crate::models::{empirical_residue, MassFunction, ModelSpec, Pmf};
use crate::schemes::{poisson_pmf, scheme_measure, SignedMeasure};
use crate::symfunc::{power_sums_finite, virtual_residue_coeffs, Alphabet, ResidueProduct};

/// Fixed CSV header of bound reports.
pub const CSV_HEADER: &str = "model,family,n,r,lambda,sigma2,tv,bound,name,holds,slack";

/// Absolute slack allowed when comparing a measured distance with a bound.
const HOLDS_SLACK: f64 = 1e-12;

/// The bounds that can be checked in a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    Lecam,
    ChenStein,
    TheoremA,
    TheoremB,
    Corollary,
    TheoremC,
}

impl BoundKind {
    pub const ALL: [BoundKind; 6] = [
        BoundKind::Lecam,
        BoundKind::ChenStein,
        BoundKind::TheoremA,
        BoundKind::TheoremB,
        BoundKind::Corollary,
        BoundKind::TheoremC,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundKind::Lecam => "lecam",
            BoundKind::ChenStein => "chen-stein",
            BoundKind::TheoremA => "theorem-a",
            BoundKind::TheoremB => "theorem-b",
            BoundKind::Corollary => "corollary",
            BoundKind::TheoremC => "theorem-c",
        }
    }

    /// Bounds checked by default: all of them for an explicit Bernoulli sum,
    /// the mod-Poisson bound for the other families.
    pub fn defaults_for(spec: &ModelSpec) -> Vec<BoundKind> {
        if matches!(spec, ModelSpec::BernoulliSum { .. }) {
            Self::ALL.to_vec()
        } else {
            vec![BoundKind::TheoremC]
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown bound `{s}`")))
    }
}

/// One row of a bound sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub model: String,
    pub family: String,
    pub n: u64,
    pub r: usize,
    pub lambda: f64,
    pub sigma2: f64,
    pub tau: Option<f64>,
    pub tv: f64,
    pub bound: Option<f64>,
    pub name: String,
    /// `None` when the bound's preconditions fail.
    pub holds: Option<bool>,
    /// `bound / tv`.
    pub slack: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl BoundReport {
    fn new(ctx: &Context, r: usize, kind: BoundKind, lambda: f64, sigma2: f64, tv: f64) -> Self {
        Self {
            model: ctx.model.clone(),
            family: ctx.family.to_string(),
            n: ctx.n,
            r,
            lambda,
            sigma2,
            tau: None,
            tv,
            bound: None,
            name: kind.name().to_string(),
            holds: None,
            slack: None,
            note: None,
        }
    }

    fn with_bound(mut self, bound: Result<f64>) -> Self {
        match bound {
            Ok(b) => {
                self.bound = Some(b);
                self.holds = Some(self.tv <= b + HOLDS_SLACK);
                self.slack = Some(b / self.tv.max(f64::MIN_POSITIVE));
            }
            Err(e) => self.note = Some(e.to_string()),
        }
        self
    }

    fn inapplicable(mut self, reason: impl Into<String>) -> Self {
        self.note = Some(reason.into());
        self
    }

    /// The row in the fixed CSV layout, floats with 17 significant digits.
    pub fn to_csv_row(&self) -> String {
        let opt = |x: Option<f64>| x.map(fmt_float).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.model,
            self.family,
            self.n,
            self.r,
            fmt_float(self.lambda),
            fmt_float(self.sigma2),
            fmt_float(self.tv),
            opt(self.bound),
            self.name,
            self.holds.map(|h| h.to_string()).unwrap_or_default(),
            opt(self.slack),
        )
    }
}

/// Round-trip float formatting (17 significant digits).
pub(crate) fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Settings of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Tolerance for series constants (`γ_θ`, `R_q`, power sums).
    pub tolerance: f64,
    /// Radius of the disc on which the residue error `ε_n` is estimated.
    pub rho: f64,
    /// Number of grid points on the circle `|w| = ρ`.
    pub grid: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-12,
            rho: 1.25,
            grid: 256,
        }
    }
}

/// `max |E[w^X] e^{−λ(w−1)} − 𝔈(A', w − 1)|` over `grid` points of `|w| = radius`.
pub fn residue_sup_distance(
    pmf: &impl MassFunction<f64>,
    lambda: f64,
    alphabet: &Alphabet,
    radius: f64,
    grid: usize,
) -> Result<f64> {
    let product = ResidueProduct::new(alphabet, radius + 1.0)?;
    let mut worst: f64 = 0.0;
    for j in 0..grid.max(1) {
        let w = Complex64::from_polar(radius, 2.0 * PI * j as f64 / grid.max(1) as f64);
        let diff = empirical_residue(pmf, lambda, w) - product.eval(w - 1.0)?;
        worst = worst.max(diff.norm());
    }
    Ok(worst)
}

struct Bernoulli {
    weights: Vec<f64>,
    lambda: f64,
    sigma2: f64,
}

struct Context {
    model: String,
    family: &'static str,
    n: u64,
    pmf: Pmf<f64>,
    bernoulli: Option<Bernoulli>,
    alphabet: Option<(Alphabet, f64)>,
    model_lambda: std::result::Result<f64, String>,
    eps_n: Option<std::result::Result<f64, String>>,
    rho: f64,
}

fn measured(pmf: &Pmf<f64>, nu: &SignedMeasure<f64>) -> Result<f64> {
    let tv = total_variation(pmf, nu)?;
    Ok(tv + 0.5 * (pmf.truncated_mass() + nu.truncated_mass()))
}

fn standard_scheme(b: &Bernoulli, r: usize) -> Result<SignedMeasure<f64>> {
    let ps = power_sums_finite(&b.weights, r.max(2))?;
    scheme_measure(&virtual_residue_coeffs(&ps, r, b.lambda)?)
}

fn row(ctx: &Context, r: usize, kind: BoundKind) -> Option<Result<BoundReport>> {
    let tv_or_nan = |res: Result<f64>| res.unwrap_or(f64::NAN);
    match kind {
        BoundKind::Lecam | BoundKind::ChenStein => {
            if r != 0 {
                return None;
            }
            let b = ctx.bernoulli.as_ref()?;
            let run = || -> Result<BoundReport> {
                let po: SignedMeasure<f64> = poisson_pmf(b.lambda)?.into();
                let tv = measured(&ctx.pmf, &po)?;
                let rep = BoundReport::new(ctx, r, kind, b.lambda, b.sigma2, tv);
                Ok(if kind == BoundKind::Lecam {
                    rep.with_bound(Ok(lecam_bound(&b.weights)))
                } else {
                    rep.with_bound(chen_stein_bound(&b.weights))
                })
            };
            Some(run())
        }
        BoundKind::TheoremA | BoundKind::TheoremB => {
            let run = || -> Result<BoundReport> {
                let Some(b) = ctx.bernoulli.as_ref() else {
                    let lambda = ctx.model_lambda.clone().unwrap_or(f64::NAN);
                    return Ok(BoundReport::new(ctx, r, kind, lambda, f64::NAN, f64::NAN)
                        .inapplicable("requires a sum of independent Bernoulli variables"));
                };
                let tv = tv_or_nan(standard_scheme(b, r).and_then(|nu| measured(&ctx.pmf, &nu)));
                let rep = BoundReport::new(ctx, r, kind, b.lambda, b.sigma2, tv);
                if r == 0 {
                    return Ok(rep.inapplicable("order r >= 1 required"));
                }
                Ok(if kind == BoundKind::TheoremA {
                    let tau = E.sqrt() * b.sigma2.sqrt();
                    let mut rep = rep.with_bound(theorem_a_bound(b.lambda, tau, r));
                    rep.tau = Some(tau);
                    rep
                } else {
                    rep.with_bound(theorem_b_bound(b.lambda, b.sigma2, r))
                })
            };
            Some(run())
        }
        BoundKind::Corollary => {
            let run = || -> Result<BoundReport> {
                let (Some(b), Some((alphabet, sigma2))) = (ctx.bernoulli.as_ref(), ctx.alphabet.as_ref())
                else {
                    let lambda = ctx.model_lambda.clone().unwrap_or(f64::NAN);
                    return Ok(BoundReport::new(ctx, r, kind, lambda, f64::NAN, f64::NAN)
                        .inapplicable("requires a Bernoulli sum with a known limiting alphabet"));
                };
                let nu = scheme_measure(&alphabet.residue_coeffs(r, b.lambda)?)?;
                let tv = measured(&ctx.pmf, &nu)?;
                let rep = BoundReport::new(ctx, r, kind, b.lambda, *sigma2, tv);
                if r == 0 {
                    return Ok(rep.inapplicable("order r >= 1 required"));
                }
                let tail = (sigma2 - b.sigma2).max(0.0);
                Ok(rep.with_bound(corollary_bound(b.lambda, *sigma2, r, tail)))
            };
            Some(run())
        }
        BoundKind::TheoremC => {
            let run = || -> Result<BoundReport> {
                let lambda = match &ctx.model_lambda {
                    Ok(l) => *l,
                    Err(e) => {
                        return Ok(BoundReport::new(ctx, r, kind, f64::NAN, f64::NAN, f64::NAN)
                            .inapplicable(e.clone()))
                    }
                };
                let Some((alphabet, sigma2)) = ctx.alphabet.as_ref() else {
                    return Ok(BoundReport::new(ctx, r, kind, lambda, f64::NAN, f64::NAN)
                        .inapplicable("no limiting alphabet is known for this model"));
                };
                let nu = scheme_measure(&alphabet.residue_coeffs(r, lambda)?)?;
                let tv = measured(&ctx.pmf, &nu)?;
                let rep = BoundReport::new(ctx, r, kind, lambda, *sigma2, tv);
                if r == 0 {
                    return Ok(rep.inapplicable("order r >= 1 required"));
                }
                let eps = match ctx.eps_n.clone() {
                    Some(Ok(e)) => e,
                    Some(Err(e)) => return Ok(rep.inapplicable(e)),
                    None => return Ok(rep.inapplicable("residue error not evaluated")),
                };
                let mut rep = rep.with_bound(theorem_c_bound(lambda, *sigma2, r, eps, ctx.rho));
                let note = format!("eps_n = {eps:.3e} estimated on a grid of |w| = {}", ctx.rho);
                rep.note = Some(match rep.note.take() {
                    Some(n) => format!("{n}; {note}"),
                    None => note,
                });
                Ok(rep)
            };
            Some(run())
        }
    }
}

/// Measures the distance between the exact law of `spec` and the relevant
/// scheme for every order in `r_list` and bound in `which` (all bounds that
/// make sense for the family when `which` is empty).
///
/// Rows whose preconditions fail are reported with `holds = None`. The
/// classical Le Cam and Chen–Stein bounds compare with the Poisson law and
/// are only emitted for `r = 0`. Rows are computed in parallel and returned
/// in `(r, bound)` order.
pub fn verify_bounds(
    spec: &ModelSpec,
    r_list: &[usize],
    which: &[BoundKind],
    options: &VerifyOptions,
) -> Result<Vec<BoundReport>> {
    let which = if which.is_empty() {
        BoundKind::defaults_for(spec)
    } else {
        which.to_vec()
    };
    let pmf = spec.pmf()?;
    let bernoulli = spec.bernoulli_weights().map(|weights| {
        let lambda = weights.iter().sum();
        let sigma2 = lecam_bound(&weights);
        Bernoulli {
            weights,
            lambda,
            sigma2,
        }
    });
    let alphabet = match spec.limiting_alphabet()? {
        Some(a) => {
            let a = a.with_tolerance(options.tolerance);
            let s2 = a.sigma2()?;
            Some((a, s2))
        }
        None => None,
    };
    let model_lambda = spec.lambda(options.tolerance).map_err(|e| e.to_string());
    let eps_n = match (&alphabet, &model_lambda) {
        (Some((a, _)), Ok(l)) if which.contains(&BoundKind::TheoremC) => Some(
            residue_sup_distance(&pmf, *l, a, options.rho, options.grid).map_err(|e| e.to_string()),
        ),
        _ => None,
    };
    let ctx = Context {
        model: spec.to_string(),
        family: spec.family(),
        n: spec.size(),
        pmf,
        bernoulli,
        alphabet,
        model_lambda,
        eps_n,
        rho: options.rho,
    };
    let jobs: Vec<(usize, BoundKind)> = r_list
        .iter()
        .flat_map(|&r| which.iter().map(move |&b| (r, b)))
        .collect();
    jobs.par_iter()
        .filter_map(|&(r, b)| row(&ctx, r, b))
        .collect()
}
