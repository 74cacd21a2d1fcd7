use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use modpoisson::io::{
    mass_csv, mass_json_lines, parse_order_range, parse_weights, parse_weights_exact,
    signed_csv, signed_json_lines,
};
use modpoisson::metrics::{verify_bounds, BoundKind, VerifyOptions, CSV_HEADER};
use modpoisson::models::{bernoulli_sum_pmf, ModelSpec, Pmf, Singularity};
use modpoisson::schemes::{rectify_positive, scheme_measure};
use modpoisson::suites::{run_suite, Suite, SuiteConfig};
use modpoisson::symfunc::{Alphabet, ResidueCoeffs};
use modpoisson::{Error, ResidueCoeffs64};

#[derive(Parser)]
#[command(name = "modpoisson", version, about = "Signed Poisson approximation schemes and bound checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact law of a model as `k,mass` rows.
    Pmf {
        #[command(flatten)]
        model: ModelArgs,
        /// Print masses as exact fractions.
        #[arg(long)]
        rational: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Masses of the approximation scheme of order r.
    Scheme(SchemeArgs),
    /// Distance between a model and its schemes, one row per order and bound.
    Compare {
        #[command(flatten)]
        model: ModelArgs,
        /// Orders: `r`, `a:b` (inclusive) or empty.
        #[arg(long, default_value = "0:4", allow_hyphen_values = false)]
        r: String,
        /// Bounds to check (comma separated); defaults depend on the model.
        #[arg(long, value_delimiter = ',')]
        bound: Vec<String>,
        /// Radius of the circle on which the residue error is estimated.
        #[arg(long, default_value_t = 1.25)]
        rho: f64,
        /// Grid points on that circle.
        #[arg(long, default_value_t = 256)]
        grid: usize,
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run a property suite; exit status 0 iff every check passes.
    Verify {
        #[arg(long)]
        suite: String,
        /// Required by suites that draw random instances.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        instances: Option<usize>,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        tolerance: Option<f64>,
        /// Write the JSON summary here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Bernoulli,
    Ewens,
    #[value(name = "weighted-perm", alias = "weighted_perm")]
    WeightedPerm,
    Fq,
    Omega,
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long, value_enum)]
    model: Family,
    #[command(flatten)]
    weights: WeightArgs,
    #[arg(long)]
    theta: Option<f64>,
    /// Cycle weights θ_1..θ_n (comma separated).
    #[arg(long, value_delimiter = ',')]
    thetas: Vec<f64>,
    #[arg(long)]
    n: Option<usize>,
    /// Upper end of the integer range for the ω model.
    #[arg(long = "N")]
    big_n: Option<u64>,
    #[arg(long)]
    q: Option<u64>,
    /// θ of the singularity θ log 1/(1 − z) + K of a weighted-permutation model.
    #[arg(long)]
    sing_theta: Option<f64>,
    /// K of that singularity.
    #[arg(long)]
    sing_k: Option<f64>,
    #[arg(long, default_value_t = 1e-12)]
    tolerance: f64,
}

#[derive(Args)]
struct WeightArgs {
    /// Inline probabilities, e.g. `0.1,0.2` or `1/3`.
    #[arg(long)]
    weights: Option<String>,
    /// File with one probability per line; `#` starts a comment.
    #[arg(long)]
    weights_file: Option<PathBuf>,
}

impl WeightArgs {
    fn text(&self) -> Result<Option<String>, Error> {
        match (&self.weights, &self.weights_file) {
            (Some(_), Some(_)) => Err(Error::InvalidArgument(
                "give either --weights or --weights-file, not both".into(),
            )),
            (Some(w), None) => Ok(Some(w.clone())),
            (None, Some(p)) => fs::read_to_string(p)
                .map(Some)
                .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", p.display()))),
            (None, None) => Ok(None),
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SchemeArgs {
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    b1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    b2: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    b3: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    b4: Option<f64>,
    /// Coefficients b_1..b_r (comma separated).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    coeffs: Vec<f64>,
    /// Limiting alphabet: harmonic, omega, ewens:θ or fq:q.
    #[arg(long)]
    alphabet: Option<String>,
    #[command(flatten)]
    weights: WeightArgs,
    #[arg(long)]
    r: Option<usize>,
    /// Replace the signed measure by its positive rectification.
    #[arg(long)]
    positive: bool,
    #[arg(long, default_value_t = 1e-12)]
    tolerance: f64,
    #[command(flatten)]
    out: OutputArgs,
}

fn need<T>(v: Option<T>, flag: &str, family: &str) -> Result<T, Error> {
    v.ok_or_else(|| Error::InvalidArgument(format!("--{flag} is required for the {family} model")))
}

impl ModelArgs {
    fn spec(&self) -> Result<ModelSpec, Error> {
        let spec = match self.model {
            Family::Bernoulli => {
                let text = need(self.weights.text()?, "weights", "bernoulli")?;
                ModelSpec::BernoulliSum {
                    weights: parse_weights(&text)?,
                }
            }
            Family::Ewens => ModelSpec::Ewens {
                theta: need(self.theta, "theta", "ewens")?,
                n: need(self.n, "n", "ewens")?,
            },
            Family::WeightedPerm => {
                let singularity = match (self.sing_theta, self.sing_k) {
                    (Some(theta), Some(k)) => Some(Singularity { theta, k }),
                    (None, None) => None,
                    _ => {
                        return Err(Error::InvalidArgument(
                            "--sing-theta and --sing-k go together".into(),
                        ))
                    }
                };
                ModelSpec::WeightedPerm {
                    thetas: self.thetas.clone(),
                    n: need(self.n, "n", "weighted-perm")?,
                    singularity,
                }
            }
            Family::Fq => ModelSpec::FqPoly {
                q: need(self.q, "q", "fq")?,
                n: need(self.n, "n", "fq")?,
            },
            Family::Omega => ModelSpec::Omega {
                n: need(self.big_n, "N", "omega")?,
            },
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn emit(out: &OutputArgs, text: &str) -> Result<(), Error> {
    match &out.output {
        Some(p) => fs::write(p, text)
            .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Error::InvalidArgument(format!("cannot write to stdout: {e}")))
        }
    }
}

fn set_jobs(jobs: Option<usize>) {
    if let Some(j) = jobs {
        // Fails only if a pool already exists, in which case it is kept.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
}

fn cmd_pmf(model: &ModelArgs, rational: bool, out: &OutputArgs) -> Result<(), Error> {
    let json = out.format == Format::Json;
    let text = if rational {
        let pmf: Pmf<BigRational> = match model.model {
            Family::Bernoulli => {
                let text = need(model.weights.text()?, "weights", "bernoulli")?;
                bernoulli_sum_pmf(&parse_weights_exact(&text)?)?
            }
            _ => model.spec()?.exact_pmf()?,
        };
        if json { mass_json_lines(&pmf, true) } else { mass_csv(&pmf, true) }
    } else {
        let pmf = model.spec()?.pmf()?;
        if json { mass_json_lines(&pmf, false) } else { mass_csv(&pmf, false) }
    };
    emit(out, &text)
}

fn explicit_coeffs(a: &SchemeArgs) -> Option<Vec<f64>> {
    if !a.coeffs.is_empty() {
        return Some(a.coeffs.clone());
    }
    let named = [a.b1, a.b2, a.b3, a.b4];
    let last = named.iter().rposition(Option::is_some)?;
    Some(named[..=last].iter().map(|b| b.unwrap_or(0.0)).collect())
}

fn scheme_coeffs(a: &SchemeArgs) -> Result<ResidueCoeffs64, Error> {
    let weights = a.weights.text()?.map(|t| parse_weights(&t)).transpose()?;
    let alphabet = match (&a.alphabet, weights) {
        (Some(_), Some(_)) => {
            return Err(Error::InvalidArgument("give either --alphabet or weights, not both".into()))
        }
        (Some(name), None) => Some(name.parse::<Alphabet>()?.with_tolerance(a.tolerance)),
        (None, Some(w)) => Some(Alphabet::finite(w)?),
        (None, None) => None,
    };
    if let Some(alphabet) = alphabet {
        if explicit_coeffs(a).is_some() {
            return Err(Error::InvalidArgument(
                "coefficients come from the alphabet; drop --b*/--coeffs".into(),
            ));
        }
        let lambda = match (a.lambda, &alphabet.kind) {
            (Some(l), _) => l,
            (None, modpoisson::symfunc::AlphabetKind::Finite { weights }) => weights.iter().sum(),
            (None, _) => return Err(Error::InvalidArgument("--lambda is required".into())),
        };
        let r = a.r.unwrap_or(2);
        let sigma2 = alphabet.sigma2()?;
        let eps = 4.0 * (std::f64::consts::E * sigma2 / lambda).sqrt();
        if eps >= 1.0 {
            eprintln!("warning: 4 sqrt(e) sigma / sqrt(lambda) = {eps:.4} is not below 1");
        }
        return alphabet.residue_coeffs(r, lambda);
    }
    let lambda = a
        .lambda
        .ok_or_else(|| Error::InvalidArgument("--lambda is required".into()))?;
    let mut b = explicit_coeffs(a).unwrap_or_default();
    if let Some(r) = a.r {
        b.resize(r, 0.0);
    }
    ResidueCoeffs::new(lambda, b)
}

fn cmd_scheme(a: &SchemeArgs) -> Result<(), Error> {
    let rc = scheme_coeffs(a)?;
    let nu = scheme_measure(&rc)?;
    let json = a.out.format == Format::Json;
    let text = if a.positive {
        let mu = rectify_positive(&nu)?;
        if json { mass_json_lines(&mu, false) } else { mass_csv(&mu, false) }
    } else {
        let neg = nu.negative_mass();
        if neg > 0.0 {
            eprintln!("note: the scheme has negative mass {neg:.3e}");
        }
        if json { signed_json_lines(&nu) } else { signed_csv(&nu) }
    };
    emit(&a.out, &text)
}

fn cmd_compare(
    model: &ModelArgs,
    r: &str,
    bound: &[String],
    options: VerifyOptions,
    out: &OutputArgs,
) -> Result<(), Error> {
    let spec = model.spec()?;
    let r_list = parse_order_range(r)?;
    let which = bound
        .iter()
        .filter(|b| !b.is_empty())
        .map(|b| b.parse::<BoundKind>())
        .collect::<Result<Vec<_>, _>>()?;
    let rows = if r_list.is_empty() {
        Vec::new()
    } else {
        verify_bounds(&spec, &r_list, &which, &options)?
    };
    let mut text = String::new();
    if out.format == Format::Csv {
        text.push_str(CSV_HEADER);
        text.push('\n');
        for row in &rows {
            text.push_str(&row.to_csv_row());
            text.push('\n');
        }
    } else {
        for row in &rows {
            text.push_str(&serde_json::to_string(row).expect("report serializes"));
            text.push('\n');
        }
    }
    emit(out, &text)
}

fn cmd_verify(
    suite: &str,
    config: SuiteConfig,
    output: Option<&PathBuf>,
) -> Result<ExitCode, (Error, u8)> {
    let suite: Suite = suite.parse().map_err(|e| (e, 2))?;
    let outcome = run_suite(suite, &config).map_err(|e| (e, 2))?;
    let text = serde_json::to_string_pretty(&outcome).expect("outcome serializes") + "\n";
    let out = OutputArgs {
        format: Format::Json,
        output: output.cloned(),
    };
    emit(&out, &text).map_err(|e| (e, 1))?;
    eprintln!(
        "{}: {} checks, {} failures",
        outcome.suite, outcome.checks, outcome.failures
    );
    Ok(if outcome.passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidArgument(_) | Error::Parse(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Pmf { model, rational, out } => cmd_pmf(model, *rational, out),
        Command::Scheme(a) => cmd_scheme(a),
        Command::Compare {
            model,
            r,
            bound,
            rho,
            grid,
            jobs,
            out,
        } => {
            set_jobs(*jobs);
            let options = VerifyOptions {
                tolerance: model.tolerance,
                rho: *rho,
                grid: *grid,
            };
            cmd_compare(model, r, bound, options, out)
        }
        Command::Verify {
            suite,
            seed,
            instances,
            jobs,
            tolerance,
            output,
        } => {
            set_jobs(*jobs);
            let config = SuiteConfig {
                seed: *seed,
                instances: *instances,
                tolerance: *tolerance,
            };
            return match cmd_verify(suite, config, output.as_ref()) {
                Ok(code) => code,
                Err((e, code)) => {
                    eprintln!("error: {e}");
                    ExitCode::from(code)
                }
            };
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
