//! Command-line front end.
//!
//! Settings resolve as command-line flag, then `--config` file entry, then
//! built-in default. Exit codes: 0 when every selected check passes, 1 when
//! a check fails (one `FAIL` line per failing case on stdout), 2 for usage
//! and configuration errors.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::density::{CircularSpec, Ensemble, EnsembleSpec, Weight};
use crate::error::{Error, Result};
use crate::report::{estimate_csv_string, parse_key_values, report_csv_string, write_samples_csv};
use crate::sampler::SamplerRegistry;
use crate::stats::{
    verify_composition, verify_decimation_relation, verify_gap_formula, verify_spacing, verify_superposition,
    verify_tridiagonal, NegativeControl, RelationParams, RelationRegistry, SuperpositionCase, VerificationReport,
    VerifyOptions,
};
use crate::suite::{self, CheckOutcome, SuiteConfig};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable read when `--threads` is absent.
pub const THREADS_ENV: &str = "BETADEC_THREADS";

#[derive(Parser, Debug)]
#[command(name = "betadec", version, about = "Decimation identities for beta ensembles: samplers, exact constants and statistical checks")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct GlobalArgs {
    /// Master seed; required with --ci.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Monte Carlo sample size per side (at least 100).
    #[arg(long = "M", global = true)]
    m: Option<usize>,
    /// Per-test KS p-value threshold.
    #[arg(long, global = true)]
    threshold: Option<f64>,
    /// Metropolis burn-in sweeps per chain.
    #[arg(long, global = true)]
    burn_in: Option<usize>,
    /// Worker threads, or `auto`.
    #[arg(long, global = true)]
    threads: Option<String>,
    /// Directory for report and sample CSVs.
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    /// File of `key = value` defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Refuse to run randomized commands without an explicit seed.
    #[arg(long, global = true)]
    ci: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one verification.
    Verify {
        #[command(subcommand)]
        what: VerifyCommand,
    },
    /// Draw an ensemble and write the configurations as CSV.
    Sample(SampleArgs),
    /// Run the full verification suite.
    Report {
        #[arg(long)]
        all: bool,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Roots-of-unity phase sums.
    Lemma {
        #[arg(long, default_value_t = 8)]
        r_max: usize,
    },
    /// Selberg integral against quadrature.
    Selberg,
    /// Morris integral against quadrature.
    Morris,
    /// Interlaced Dixon-Anderson integral against its normalisation.
    Theorem1 {
        #[arg(long)]
        circular: bool,
    },
    /// One decimation relation.
    Decimation {
        #[arg(long)]
        relation: String,
        #[command(flatten)]
        size: SizeArgs,
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long, value_enum)]
        negative_control: Option<ControlArg>,
        /// Sampler for ensembles it supports.
        #[arg(long, default_value = "metropolis")]
        sampler: String,
    },
    /// Forward conditional construction of a relation.
    Composition {
        #[arg(long)]
        relation: String,
        #[command(flatten)]
        size: SizeArgs,
        #[command(flatten)]
        weight: WeightArgs,
    },
    /// A superposition identity at β = 1.
    Superposition {
        #[arg(long, default_value = "gaussian")]
        kind: String,
        #[arg(long = "N", default_value_t = 2)]
        n: usize,
        #[command(flatten)]
        weight: WeightArgs,
    },
    /// Circular nearest-neighbour spacing identity.
    Spacing {
        #[command(flatten)]
        size: SizeArgs,
        #[arg(long, default_value_t = 0)]
        k_prime: usize,
    },
    /// Probability of one eigenvalue per interval.
    Gap {
        #[command(flatten)]
        weight: WeightArgs,
        /// Interior cut points in (0, 1), descending.
        #[arg(long, value_delimiter = ',', default_value = "0.5")]
        cuts: Vec<f64>,
    },
    /// Consistency of the asymptotic coefficients.
    Asymptotic,
    /// Exact tridiagonal model against Metropolis.
    Tridiagonal {
        #[arg(long, default_value_t = 2.0)]
        beta: f64,
        #[arg(long = "N", default_value_t = 3)]
        n: usize,
    },
}

#[derive(Args, Debug)]
struct SizeArgs {
    #[arg(long, default_value_t = 1)]
    r: usize,
    #[arg(long = "N", default_value_t = 2)]
    n: usize,
}

#[derive(Args, Debug)]
struct WeightArgs {
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[arg(long, value_enum)]
    ensemble: EnsembleArg,
    #[arg(long, default_value_t = 2.0)]
    beta: f64,
    #[arg(long = "N")]
    n: usize,
    #[arg(long, default_value_t = 0.0)]
    a: f64,
    #[arg(long, default_value_t = 0.0)]
    b: f64,
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    #[arg(long, default_value = "metropolis")]
    sampler: String,
    #[arg(long)]
    out: PathBuf,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum EnsembleArg {
    Jacobi,
    Laguerre,
    Gaussian,
    Circular,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ControlArg {
    Stride,
    Beta,
}

/// Settings resolved from the command line and the config file.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub seed: Option<u64>,
    pub m: usize,
    pub threshold: f64,
    pub burn_in: usize,
    /// `None` means one thread per core.
    pub threads: Option<usize>,
    pub out_dir: Option<PathBuf>,
    pub ci: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { seed: None, m: 20_000, threshold: 1e-3, burn_in: 1000, threads: None, out_dir: None, ci: false }
    }
}

fn parse_value<T: std::str::FromStr>(key: &str, v: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    v.parse().map_err(|e| Error::Parse(format!("{key} = {v}: {e}")))
}

fn parse_threads(v: &str) -> Result<Option<usize>> {
    match v {
        "auto" | "0" => Ok(None),
        _ => parse_value("threads", v).map(Some),
    }
}

impl RunConfig {
    /// Applies `key = value` entries from a config file.
    pub fn apply_file(&mut self, text: &str) -> Result<()> {
        for (key, v) in parse_key_values(text)? {
            match key.as_str() {
                "seed" => self.seed = Some(parse_value(&key, &v)?),
                "M" | "m" => self.m = parse_value(&key, &v)?,
                "threshold" => self.threshold = parse_value(&key, &v)?,
                "burn_in" => self.burn_in = parse_value(&key, &v)?,
                "threads" => self.threads = parse_threads(&v)?,
                "out_dir" => self.out_dir = Some(PathBuf::from(v)),
                "ci" => self.ci = parse_value(&key, &v)?,
                _ => return Err(Error::Parse(format!("unknown config key `{key}`"))),
            }
        }
        Ok(())
    }

    fn resolve(flags: &GlobalArgs) -> Result<Self> {
        let mut cfg = Self::default();
        if let Some(path) = &flags.config {
            cfg.apply_file(&fs::read_to_string(path)?)?;
        }
        if let Ok(v) = std::env::var(THREADS_ENV) {
            cfg.threads = parse_threads(&v)?;
        }
        cfg.seed = flags.seed.or(cfg.seed);
        cfg.m = flags.m.unwrap_or(cfg.m);
        cfg.threshold = flags.threshold.unwrap_or(cfg.threshold);
        cfg.burn_in = flags.burn_in.unwrap_or(cfg.burn_in);
        if let Some(t) = &flags.threads {
            cfg.threads = parse_threads(t)?;
        }
        cfg.out_dir = flags.out_dir.clone().or(cfg.out_dir);
        cfg.ci |= flags.ci;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m < 100 {
            return Err(Error::Domain(format!("M must be at least 100, got {}", self.m)));
        }
        if !(self.threshold > 0.0 && self.threshold < 1.0) {
            return Err(Error::Domain(format!("threshold must lie in (0, 1), got {}", self.threshold)));
        }
        if let Some(dir) = &self.out_dir {
            fs::create_dir_all(dir)?;
        }
        Ok(())
    }

    /// The seed for a randomized command.
    fn seed(&self) -> Result<u64> {
        match (self.seed, self.ci) {
            (Some(s), _) => Ok(s),
            (None, true) => Err(Error::Domain("--ci requires --seed for randomized commands".into())),
            (None, false) => {
                let s = rand::random::<u64>();
                println!("seed={s}");
                Ok(s)
            }
        }
    }

    fn options(&self) -> VerifyOptions {
        VerifyOptions { burn_in: self.burn_in, threshold: self.threshold, ..VerifyOptions::default() }
    }
}

fn relation_params(w: &WeightArgs) -> RelationParams {
    let d = RelationParams::default();
    RelationParams { a: w.a.unwrap_or(d.a), b: w.b.unwrap_or(d.b) }
}

/// Prints one report, writes its CSVs when an output directory is set, and
/// returns the exit code.
fn finish_report(cfg: &RunConfig, stem: &str, report: &VerificationReport) -> Result<i32> {
    print!("{}", report_csv_string(report));
    if let Some(est) = estimate_csv_string(report) {
        print!("{est}");
    }
    if let Some(dir) = &cfg.out_dir {
        fs::write(dir.join(format!("{stem}.csv")), report_csv_string(report))?;
        if let Some(est) = estimate_csv_string(report) {
            fs::write(dir.join(format!("{stem}_estimate.csv")), est)?;
        }
    }
    if report.pass {
        Ok(EXIT_PASS)
    } else {
        println!("FAIL {},r={},N={},min_p={}", report.relation, report.r, report.n, report.min_p_value());
        Ok(EXIT_FAIL)
    }
}

fn finish_checks(outcomes: &[CheckOutcome]) -> i32 {
    for o in outcomes {
        println!("{}", o.line());
    }
    let mut code = EXIT_PASS;
    for o in outcomes.iter().filter(|o| !o.pass) {
        code = EXIT_FAIL;
        if o.failures.is_empty() {
            println!("FAIL check={},name={}", o.id, o.name);
        }
        for f in &o.failures {
            println!("FAIL check={},name={},case={}", o.id, o.name, f);
        }
    }
    code
}

fn run_verify(cfg: &RunConfig, what: VerifyCommand) -> Result<i32> {
    let relations = RelationRegistry::builtin();
    match what {
        VerifyCommand::Lemma { r_max } => Ok(finish_checks(&[suite::check_phase_sums(r_max)])),
        VerifyCommand::Selberg => Ok(finish_checks(&[suite::check_selberg()])),
        VerifyCommand::Morris => Ok(finish_checks(&[suite::check_morris()])),
        VerifyCommand::Theorem1 { circular } => {
            let seed = cfg.seed()?;
            let o = if circular { suite::check_interlaced_circle(seed) } else { suite::check_interlaced_line(seed) };
            Ok(finish_checks(&[o]))
        }
        VerifyCommand::Asymptotic => Ok(finish_checks(&[suite::check_asymptotic()])),
        VerifyCommand::Decimation { relation, size, weight, negative_control, sampler } => {
            let rel = relations.get(&relation)?;
            SamplerRegistry::builtin().get(&sampler)?;
            let opts = VerifyOptions {
                params: relation_params(&weight),
                sampler,
                negative_control: negative_control.map(|c| match c {
                    ControlArg::Stride => NegativeControl::WrongStride,
                    ControlArg::Beta => NegativeControl::WrongBeta,
                }),
                ..cfg.options()
            };
            let outcome = verify_decimation_relation(rel.as_ref(), size.r, size.n, cfg.m, cfg.seed()?, &opts)?;
            let stem = format!("decimation_{}_r{}_N{}", rel.name(), size.r, size.n);
            if let Some(dir) = &cfg.out_dir {
                write_samples_csv(&outcome.lhs, &dir.join(format!("{stem}_lhs.csv")))?;
                write_samples_csv(&outcome.rhs, &dir.join(format!("{stem}_rhs.csv")))?;
            }
            finish_report(cfg, &stem, &outcome.report)
        }
        VerifyCommand::Composition { relation, size, weight } => {
            let rel = relations.get(&relation)?;
            let opts = VerifyOptions { params: relation_params(&weight), ..cfg.options() };
            let report = verify_composition(rel.as_ref(), size.r, size.n, cfg.m, cfg.seed()?, &opts)?;
            finish_report(cfg, &format!("composition_{}_r{}_N{}", rel.name(), size.r, size.n), &report)
        }
        VerifyCommand::Superposition { kind, n, weight } => {
            let case = match kind.parse::<SuperpositionCase>()? {
                SuperpositionCase::Jacobi81 { a, b } => {
                    SuperpositionCase::Jacobi81 { a: weight.a.unwrap_or(a), b: weight.b.unwrap_or(b) }
                }
                SuperpositionCase::Jacobi82 { b } => SuperpositionCase::Jacobi82 { b: weight.b.unwrap_or(b) },
                SuperpositionCase::Laguerre { a } => SuperpositionCase::Laguerre { a: weight.a.unwrap_or(a) },
                SuperpositionCase::Gaussian => SuperpositionCase::Gaussian,
            };
            let report = verify_superposition(case, n, cfg.m, cfg.seed()?, &cfg.options())?;
            finish_report(cfg, &format!("superposition_{}_N{n}", case.name()), &report)
        }
        VerifyCommand::Spacing { size, k_prime } => {
            let report = verify_spacing(size.r, size.n, k_prime, cfg.m, cfg.seed()?, &cfg.options())?;
            finish_report(cfg, &format!("spacing_r{}_N{}_k{k_prime}", size.r, size.n), &report)
        }
        VerifyCommand::Gap { weight, cuts } => {
            let (a, b) = (weight.a.unwrap_or(0.0), weight.b.unwrap_or(0.0));
            let report = verify_gap_formula(a, b, &cuts, cfg.m, cfg.seed()?, &cfg.options())?;
            finish_report(cfg, "gap", &report)
        }
        VerifyCommand::Tridiagonal { beta, n } => {
            let report = verify_tridiagonal(beta, n, cfg.m, cfg.seed()?, &cfg.options())?;
            finish_report(cfg, &format!("tridiagonal_N{n}"), &report)
        }
    }
}

fn run_sample(cfg: &RunConfig, args: SampleArgs) -> Result<i32> {
    let ensemble = match args.ensemble {
        EnsembleArg::Jacobi => Ensemble::Line(EnsembleSpec::new(args.beta, args.n, Weight::Jacobi { a: args.a, b: args.b })?),
        EnsembleArg::Laguerre => {
            Ensemble::Line(EnsembleSpec::new(args.beta, args.n, Weight::Laguerre { a: args.a, c: args.c })?)
        }
        EnsembleArg::Gaussian => Ensemble::Line(EnsembleSpec::new(args.beta, args.n, Weight::Gaussian { c: args.c })?),
        EnsembleArg::Circular => Ensemble::Circle(CircularSpec::new(args.beta, args.n, args.b)?),
    };
    let sampler = SamplerRegistry::builtin().get(&args.sampler)?;
    if !sampler.supports(&ensemble) {
        return Err(Error::Domain(format!("sampler `{}` cannot draw from {ensemble}", sampler.name())));
    }
    let batch = sampler.sample(&ensemble, &cfg.options().chain_config(cfg.m), cfg.seed()?)?;
    let out = match &cfg.out_dir {
        Some(dir) if args.out.is_relative() => dir.join(&args.out),
        _ => args.out.clone(),
    };
    write_samples_csv(&batch, &out)?;
    println!("wrote {} rows to {}", batch.len(), out.display());
    Ok(EXIT_PASS)
}

fn run_report(cfg: &RunConfig, all: bool) -> Result<i32> {
    if !all {
        return Err(Error::Domain("report needs --all".into()));
    }
    let suite_cfg = SuiteConfig {
        seed: cfg.seed()?,
        samples: cfg.m,
        gap_samples: cfg.m * 5,
        burn_in: cfg.burn_in,
        threshold: cfg.threshold,
        out_dir: cfg.out_dir.clone(),
    };
    Ok(finish_checks(&suite::run_all(&suite_cfg)?))
}

fn install_threads(threads: Option<usize>) {
    // A global pool can be built once per process; later calls are no-ops.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads.unwrap_or(0)).build_global();
}

/// Runs the command given by `argv` (program name first) and returns
/// the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    let cfg = match RunConfig::resolve(&cli.global) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    install_threads(cfg.threads);
    let result = match cli.command {
        Command::Verify { what } => run_verify(&cfg, what),
        Command::Sample(args) => run_sample(&cfg, args),
        Command::Report { all } => run_report(&cfg, all),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        EXIT_USAGE
    })
}
