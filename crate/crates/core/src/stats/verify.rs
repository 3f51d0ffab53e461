use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;

use crate::decimate::{even, superimpose, ConfigKind, OrderedConfig};
use crate::density::{CircularSpec, Ensemble, EnsembleSpec, Weight};
use crate::error::{domain, Error, Result};
use crate::sampler::{
    mix64, run_chain, sample_gaussian_tridiag, sample_me, stream_rng, ChainConfig, SampleBatch, SamplerRegistry,
};

use super::{
    circular_spacing, ks_two_sample, per_position_ks, DecimationRelation, EstimateCheck, PositionTest,
    RelationParams, VerificationReport,
};

// Sub-stream labels so that every random ingredient of a run has its own seed.
const STREAM_LHS: u64 = 1;
const STREAM_RHS: u64 = 2;
const STREAM_DECIMATE: u64 = 3;
const STREAM_CONDITIONAL: u64 = 4;
const STREAM_SECOND: u64 = 5;
const STREAM_EXACT: u64 = 6;

/// Settings shared by the Monte Carlo verifiers.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    pub burn_in: usize,
    /// Per-test p-value threshold.
    pub threshold: f64,
    pub params: RelationParams,
    /// Sampler used where it supports the ensemble; Metropolis otherwise.
    pub sampler: String,
    pub negative_control: Option<NegativeControl>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            burn_in: 1000,
            threshold: 1e-3,
            params: RelationParams::default(),
            sampler: "metropolis".into(),
            negative_control: None,
        }
    }
}

impl VerifyOptions {
    pub fn chain_config(&self, chains: usize) -> ChainConfig {
        ChainConfig::default().with_chains(chains).with_burn_in(self.burn_in)
    }
}

/// Deliberately wrong variants used to check that the tests have power.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NegativeControl {
    /// Decimate with stride `r + 2`.
    WrongStride,
    /// Halve the RHS β.
    WrongBeta,
}

impl NegativeControl {
    fn tag(&self) -> &'static str {
        match self {
            NegativeControl::WrongStride => "wrong-stride",
            NegativeControl::WrongBeta => "wrong-beta",
        }
    }
}

/// A decimation report together with the two samples it compared.
#[derive(Debug, Clone)]
pub struct DecimationOutcome {
    pub report: VerificationReport,
    /// Decimated LHS rows.
    pub lhs: SampleBatch,
    pub rhs: SampleBatch,
}

fn draw(ensemble: &Ensemble, config: &ChainConfig, seed: u64, opts: &VerifyOptions) -> Result<SampleBatch> {
    let registry = SamplerRegistry::builtin();
    let preferred = registry.get(&opts.sampler)?;
    let sampler = if preferred.supports(ensemble) { preferred } else { registry.get("metropolis")? };
    sampler.sample(ensemble, config, seed)
}

fn check_sizes(r: usize, n: usize, m: usize) -> Result<()> {
    if r == 0 || n == 0 {
        return Err(domain("r and N must be >= 1"));
    }
    if m < 2 {
        return Err(domain("at least two samples per side are needed"));
    }
    Ok(())
}

/// Samples both sides of a relation, decimates the LHS with stride `r + 1`,
/// and compares the surviving order statistics position by position.
pub fn verify_decimation_relation(
    relation: &dyn DecimationRelation,
    r: usize,
    n: usize,
    m: usize,
    seed: u64,
    opts: &VerifyOptions,
) -> Result<DecimationOutcome> {
    check_sizes(r, n, m)?;
    let start = Instant::now();
    let config = opts.chain_config(m);
    let lhs_ens = relation.lhs(r, n, &opts.params)?;
    let mut rhs_ens = relation.rhs(r, n, &opts.params)?;
    if opts.negative_control == Some(NegativeControl::WrongBeta) {
        rhs_ens = rhs_ens.with_beta(rhs_ens.beta() / 2.0);
    }
    let stride = if opts.negative_control == Some(NegativeControl::WrongStride) { r + 2 } else { r + 1 };

    let lhs = draw(&lhs_ens, &config, mix64(seed, STREAM_LHS), opts)?;
    let rhs = draw(&rhs_ens, &config, mix64(seed, STREAM_RHS), opts)?;
    let dec_seed = mix64(seed, STREAM_DECIMATE);
    let rows = lhs
        .rows()
        .enumerate()
        .map(|(i, row)| relation.decimate_row(row, stride, &mut stream_rng(dec_seed, i as u64)))
        .collect::<Result<Vec<_>>>()?;
    let dec_dim = lhs.dim() / stride;
    let decimated = SampleBatch::from_rows(rows, dec_dim, format!("D{stride}({lhs_ens})"), lhs.master_seed, config)?;

    let positions = dec_dim.min(n);
    let tests = per_position_ks(&decimated, &rhs, positions)?;
    let name = match opts.negative_control {
        Some(c) => format!("{}[{}]", relation.name(), c.tag()),
        None => relation.name().to_string(),
    };
    let mut report = VerificationReport::from_tests(name, r, n, tests, opts.threshold, seed);
    report.runtime_secs = start.elapsed().as_secs_f64();
    Ok(DecimationOutcome { report, lhs: decimated, rhs })
}

fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Forward construction: RHS points plus Dixon–Anderson points drawn
/// conditionally on them must reproduce the full LHS ensemble.
pub fn verify_composition(
    relation: &dyn DecimationRelation,
    r: usize,
    n: usize,
    m: usize,
    seed: u64,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    check_sizes(r, n, m)?;
    let start = Instant::now();
    let config = opts.chain_config(m);
    let lhs_ens = relation.lhs(r, n, &opts.params)?;
    let rhs_ens = relation.rhs(r, n, &opts.params)?;
    if relation.conditional(r, &opts.params, &vec![0.5; n]).is_none() {
        return Err(domain(format!("relation {} has no forward construction", relation.name())));
    }
    let direct = draw(&lhs_ens, &config, mix64(seed, STREAM_LHS), opts)?;
    let rhs = draw(&rhs_ens, &config, mix64(seed, STREAM_RHS), opts)?;
    let cond_seed = mix64(seed, STREAM_CONDITIONAL);
    let rows: Vec<Vec<f64>> = (0..m)
        .into_par_iter()
        .map(|i| {
            let row = rhs.row(i);
            let target = relation.conditional(r, &opts.params, row).expect("checked above")?;
            let lam = run_chain(&target, &config, &mut stream_rng(cond_seed, i as u64));
            let mut all = row.to_vec();
            all.extend(lam);
            Ok(sorted_desc(all))
        })
        .collect::<Result<_>>()?;
    let dim = lhs_ens.size();
    if rows.first().map(|r| r.len()) != Some(dim) {
        return Err(Error::Dimension { expected: dim, got: rows.first().map_or(0, |r| r.len()) });
    }
    let composed = SampleBatch::from_rows(rows, dim, format!("compose({rhs_ens})"), seed, config)?;
    let tests = per_position_ks(&composed, &direct, dim)?;
    let mut report =
        VerificationReport::from_tests(format!("composition:{}", relation.name()), r, n, tests, opts.threshold, seed);
    report.runtime_secs = start.elapsed().as_secs_f64();
    Ok(report)
}

/// The four `β = 1` superposition identities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SuperpositionCase {
    /// `even(OE_N(f) ∪ OE_{N+1}(f)) = UE_N(x^a(1−x)^b)`, `f = x^{(a−1)/2}(1−x)^{(b−1)/2}`.
    Jacobi81 { a: f64, b: f64 },
    /// `even(OE_N(g) ∪ OE_N(g)) = UE_N((1−x)^b)`, `g = (1−x)^{(b−1)/2}`.
    Jacobi82 { b: f64 },
    /// `even(OE_N(f) ∪ OE_{N+1}(f)) = UE_N(x^a e^{−x})`, `f = x^{(a−1)/2}e^{−x/2}`.
    Laguerre { a: f64 },
    /// `even(OE_N(e^{−x²/2}) ∪ OE_{N+1}(e^{−x²/2})) = UE_N(e^{−x²})`.
    Gaussian,
}

impl SuperpositionCase {
    pub const NAMES: [&'static str; 4] = ["jacobi_8_1", "jacobi_8_2", "laguerre", "gaussian"];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Jacobi81 { .. } => "jacobi_8_1",
            Self::Jacobi82 { .. } => "jacobi_8_2",
            Self::Laguerre { .. } => "laguerre",
            Self::Gaussian => "gaussian",
        }
    }

    /// `(f, sizes, target weight)` for `N`.
    fn plan(&self, n: usize) -> (Weight, (usize, usize), Weight) {
        match *self {
            Self::Jacobi81 { a, b } => {
                (Weight::Jacobi { a: (a - 1.0) / 2.0, b: (b - 1.0) / 2.0 }, (n, n + 1), Weight::Jacobi { a, b })
            }
            Self::Jacobi82 { b } => (Weight::Jacobi { a: 0.0, b: (b - 1.0) / 2.0 }, (n, n), Weight::Jacobi { a: 0.0, b }),
            Self::Laguerre { a } => {
                (Weight::Laguerre { a: (a - 1.0) / 2.0, c: 0.5 }, (n, n + 1), Weight::Laguerre { a, c: 1.0 })
            }
            Self::Gaussian => (Weight::Gaussian { c: 0.5 }, (n, n + 1), Weight::Gaussian { c: 1.0 }),
        }
    }
}

impl FromStr for SuperpositionCase {
    type Err = Error;

    /// Parses a case name with default weight parameters `a = 2`, `b = 1`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jacobi_8_1" => Ok(Self::Jacobi81 { a: 2.0, b: 1.0 }),
            "jacobi_8_2" => Ok(Self::Jacobi82 { b: 1.0 }),
            "laguerre" => Ok(Self::Laguerre { a: 2.0 }),
            "gaussian" => Ok(Self::Gaussian),
            other => Err(Error::Unknown { kind: "superposition case", name: other.to_string() }),
        }
    }
}

pub fn verify_superposition(
    case: SuperpositionCase,
    n: usize,
    m: usize,
    seed: u64,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    check_sizes(1, n, m)?;
    let start = Instant::now();
    let config = opts.chain_config(m);
    let (f, (n1, n2), target) = case.plan(n);
    let first = sample_me(&EnsembleSpec::new(1.0, n1, f)?, &config, mix64(seed, STREAM_LHS))?;
    let second = sample_me(&EnsembleSpec::new(1.0, n2, f)?, &config, mix64(seed, STREAM_SECOND))?;
    let direct = draw(&Ensemble::Line(EnsembleSpec::new(2.0, n, target)?), &config, mix64(seed, STREAM_RHS), opts)?;
    let rows = first
        .rows()
        .zip(second.rows())
        .map(|(x, y)| {
            let u = superimpose(
                &OrderedConfig::new(x.to_vec(), ConfigKind::Line)?,
                &OrderedConfig::new(y.to_vec(), ConfigKind::Line)?,
            )?;
            Ok(even(&u)?.into_values())
        })
        .collect::<Result<Vec<_>>>()?;
    let dim = (n1 + n2) / 2;
    let evens = SampleBatch::from_rows(rows, dim, format!("even(OE{n1} u OE{n2})"), seed, config)?;
    let tests = per_position_ks(&evens, &direct, n)?;
    let mut report =
        VerificationReport::from_tests(format!("superposition:{}", case.name()), 1, n, tests, opts.threshold, seed);
    report.runtime_secs = start.elapsed().as_secs_f64();
    Ok(report)
}

/// One `(k+1)`-st neighbour spacing per configuration, from a random start,
/// in units where the mean spacing is one.
fn unit_spacings(batch: &SampleBatch, k: usize, per_unit: f64, seed: u64) -> Vec<f64> {
    let n = batch.dim();
    batch
        .rows()
        .enumerate()
        .map(|(i, row)| {
            let j = stream_rng(seed, i as u64).random_range(0..n);
            circular_spacing(row, j, k) * per_unit
        })
        .collect()
}

/// Circular spacing identity: `(r+1)k'+r`-th neighbour spacings at
/// `β = 2/(r+1)`, size `(r+1)N`, divided by `r+1`, against `k'`-th neighbour
/// spacings at `β = 2(r+1)`, size `N`, both in unit mean density.
pub fn verify_spacing(
    r: usize,
    n: usize,
    k_prime: usize,
    m: usize,
    seed: u64,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    check_sizes(r, n, m)?;
    if k_prime + 1 >= n {
        return Err(domain(format!("spacing order k' = {k_prime} needs k' + 1 < N = {n}")));
    }
    let start = Instant::now();
    let config = opts.chain_config(m);
    let big = (r + 1) * n;
    let lhs_ens = Ensemble::Circle(CircularSpec::new(2.0 / (r as f64 + 1.0), big, 0.0)?);
    let rhs_ens = Ensemble::Circle(CircularSpec::new(2.0 * (r as f64 + 1.0), n, 0.0)?);
    let lhs = draw(&lhs_ens, &config, mix64(seed, STREAM_LHS), opts)?;
    let rhs = draw(&rhs_ens, &config, mix64(seed, STREAM_RHS), opts)?;
    let two_pi = 2.0 * std::f64::consts::PI;
    let k_lhs = (r + 1) * k_prime + r;
    let x = unit_spacings(&lhs, k_lhs, big as f64 / two_pi / (r as f64 + 1.0), mix64(seed, STREAM_DECIMATE));
    let y = unit_spacings(&rhs, k_prime, n as f64 / two_pi, mix64(seed, STREAM_CONDITIONAL));
    let tests = vec![PositionTest { position: k_prime + 1, ks: ks_two_sample(&x, &y)? }];
    let mut report = VerificationReport::from_tests("spacing".into(), r, n, tests, opts.threshold, seed);
    report.runtime_secs = start.elapsed().as_secs_f64();
    Ok(report)
}

/// Monte Carlo frequency of "exactly one eigenvalue in each interval" for
/// `ME_{1,N+1}(x^a(1−x)^b)` against the closed form.
pub fn verify_gap_formula(
    a: f64,
    b: f64,
    interior: &[f64],
    m: usize,
    seed: u64,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let closed = super::gap_prob_closed_form(a, b, interior)?;
    if m < 2 {
        return Err(domain("at least two samples are needed"));
    }
    let start = Instant::now();
    let n = interior.len();
    let spec = EnsembleSpec::new(1.0, n + 1, Weight::Jacobi { a, b })?;
    let batch = sample_me(&spec, &opts.chain_config(m), mix64(seed, STREAM_LHS))?;
    let hits = batch
        .rows()
        .filter(|row| interior.iter().enumerate().all(|(j, &cut)| row[j] > cut && row[j + 1] < cut))
        .count();
    let p = hits as f64 / m as f64;
    let check = EstimateCheck {
        estimate: p,
        std_error: (p * (1.0 - p) / m as f64).sqrt(),
        closed_form: closed,
        samples: m,
    };
    let mut report = VerificationReport::from_tests("gap".into(), 1, n, Vec::new(), opts.threshold, seed);
    report.pass = check.within(3.0);
    report.probability = Some(check);
    report.runtime_secs = start.elapsed().as_secs_f64();
    Ok(report)
}

/// Exact tridiagonal draws against Metropolis draws of `ME_{β,N}(e^{−x²/2})`,
/// plus the second-moment identity `E Σλ² = N + βN(N−1)/2`.
pub fn verify_tridiagonal(beta: f64, n: usize, m: usize, seed: u64, opts: &VerifyOptions) -> Result<VerificationReport> {
    check_sizes(1, n, m)?;
    let start = Instant::now();
    let exact = sample_gaussian_tridiag(beta, n, m, mix64(seed, STREAM_EXACT))?;
    let spec = EnsembleSpec::new(beta, n, Weight::Gaussian { c: 0.5 })?;
    let mcmc = sample_me(&spec, &opts.chain_config(m), mix64(seed, STREAM_LHS))?;
    let tests = per_position_ks(&exact, &mcmc, n)?;
    let sums: Vec<f64> = exact.rows().map(|r| r.iter().map(|x| x * x).sum()).collect();
    let mean = sums.iter().sum::<f64>() / m as f64;
    let var = sums.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (m as f64 - 1.0);
    let nf = n as f64;
    let check = EstimateCheck {
        estimate: mean,
        std_error: (var / m as f64).sqrt(),
        closed_form: nf + beta * nf * (nf - 1.0) / 2.0,
        samples: m,
    };
    let mut report =
        VerificationReport::from_tests(format!("tridiagonal:beta={beta}"), 1, n, tests, opts.threshold, seed);
    report.pass = report.pass && check.within(3.0);
    report.probability = Some(check);
    report.runtime_secs = start.elapsed().as_secs_f64();
    Ok(report)
}
