//! Independent draws from the ensembles and conditional densities.
//!
//! Two interchangeable strategies implement [`EnsembleSampler`]:
//! `metropolis`, a single-site random-walk Metropolis sampler that works for
//! every log-density in [`crate::density`], and `tridiagonal`, the exact
//! Gaussian tridiagonal matrix model. Both are registered by name in a
//! [`SamplerRegistry`] so that callers can select one at runtime.
//!
//! Every batch row comes from its own chain with its own RNG stream derived
//! from `(master_seed, row)`, so results never depend on thread scheduling.

mod metropolis;
mod tridiag;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::density::{CircDAParams, CircularSpec, DAParams, Ensemble, EnsembleSpec, Weight};
use crate::error::{domain, Error, Result};

pub use metropolis::{
    run_chain, CircleDaTarget, CircleEnsembleTarget, LineDaTarget, LineEnsembleTarget, LogTarget,
};
pub use tridiag::{
    gaussian_tridiag_matrix, sample_gaussian_tridiag, tridiag_eigenvalues, TridiagMatrix,
};

/// Proposal scale of the random-walk kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepScale {
    /// Per-coordinate scales tuned toward `target_accept` during the first half of burn-in.
    Adaptive,
    Fixed(f64),
}

impl fmt::Display for StepScale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepScale::Adaptive => write!(f, "adaptive"),
            StepScale::Fixed(s) => write!(f, "{s}"),
        }
    }
}

/// Settings shared by all chains of one batch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainConfig {
    pub burn_in_sweeps: usize,
    pub step_scale: StepScale,
    /// Number of independent chains, i.e. rows in the batch.
    pub chains: usize,
    pub target_accept: f64,
}

impl Default for ChainConfig {
    fn default() -> Self {
        Self { burn_in_sweeps: 5000, step_scale: StepScale::Adaptive, chains: 1000, target_accept: 0.44 }
    }
}

impl ChainConfig {
    pub fn with_chains(self, chains: usize) -> Self {
        Self { chains, ..self }
    }

    pub fn with_burn_in(self, burn_in_sweeps: usize) -> Self {
        Self { burn_in_sweeps, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if self.burn_in_sweeps == 0 {
            return Err(domain("burn_in_sweeps must be >= 1"));
        }
        if self.chains == 0 {
            return Err(domain("chains must be >= 1"));
        }
        if !(self.target_accept > 0.0 && self.target_accept < 1.0) {
            return Err(domain("target_accept must lie in (0, 1)"));
        }
        if let StepScale::Fixed(s) = self.step_scale {
            if !(s > 0.0) {
                return Err(domain("fixed step scale must be > 0"));
            }
        }
        Ok(())
    }
}

/// `M` ordered configurations of dimension `d`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleBatch {
    values: Vec<f64>,
    dim: usize,
    pub spec_fingerprint: String,
    pub master_seed: u64,
    pub config: ChainConfig,
}

impl SampleBatch {
    pub fn from_rows(
        rows: Vec<Vec<f64>>,
        dim: usize,
        spec_fingerprint: String,
        master_seed: u64,
        config: ChainConfig,
    ) -> Result<Self> {
        let mut values = Vec::with_capacity(rows.len() * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::Dimension { expected: dim, got: row.len() });
            }
            values.extend(row);
        }
        Ok(Self { values, dim, spec_fingerprint, master_seed, config })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        if self.dim == 0 {
            0
        } else {
            self.values.len() / self.dim
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks(self.dim.max(1))
    }

    /// Values of coordinate `j` (0-based) across all rows.
    pub fn column(&self, j: usize) -> Vec<f64> {
        self.rows().map(|r| r[j]).collect()
    }
}

/// 64-bit avalanche mix (SplitMix64 finaliser) of a master seed and a stream index.
pub fn mix64(master_seed: u64, index: u64) -> u64 {
    let mut z = master_seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// RNG for stream `index` of `master_seed`.
pub fn stream_rng(master_seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(mix64(master_seed, index))
}

/// Run `config.chains` independent chains on `target`, in parallel, one row each.
pub fn sample_target<T: LogTarget>(
    target: &T,
    config: &ChainConfig,
    master_seed: u64,
    fingerprint: String,
) -> Result<SampleBatch> {
    config.validate()?;
    let rows: Vec<Vec<f64>> = (0..config.chains as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(master_seed, i);
            run_chain(target, config, &mut rng)
        })
        .collect();
    SampleBatch::from_rows(rows, target.dim(), fingerprint, master_seed, *config)
}

/// Draws from `ME_{β,N}(g)`, rows sorted in decreasing order.
pub fn sample_me(spec: &EnsembleSpec, config: &ChainConfig, master_seed: u64) -> Result<SampleBatch> {
    spec.validate()?;
    sample_target(&LineEnsembleTarget::new(*spec), config, master_seed, spec.to_string())
}

/// Draws from `CE^b_{β,N}`, rows sorted increasingly in `[0, 2π)`.
pub fn sample_ce(spec: &CircularSpec, config: &ChainConfig, master_seed: u64) -> Result<SampleBatch> {
    spec.validate()?;
    sample_target(&CircleEnsembleTarget::new(*spec), config, master_seed, spec.to_string())
}

/// Draws from the generalised Dixon–Anderson density on the line.
pub fn sample_da(params: &DAParams, config: &ChainConfig, master_seed: u64) -> Result<SampleBatch> {
    params.validate()?;
    let target = LineDaTarget::from_params(params);
    sample_target(&target, config, master_seed, format!("DA[r={},a={:?},s={:?}]", params.r, params.a, params.s))
}

/// Draws from the circular generalised Dixon–Anderson density.
pub fn sample_cda(params: &CircDAParams, config: &ChainConfig, master_seed: u64) -> Result<SampleBatch> {
    params.validate()?;
    let target = CircleDaTarget::from_params(params);
    let fp = format!("CDA[r={},theta={:?},alpha={:?}]", params.r, params.theta, params.alpha);
    sample_target(&target, config, master_seed, fp)
}

/// A sampling strategy for whole ensembles.
pub trait EnsembleSampler: Send + Sync {
    fn name(&self) -> &'static str;
    fn supports(&self, ensemble: &Ensemble) -> bool;
    fn sample(&self, ensemble: &Ensemble, config: &ChainConfig, master_seed: u64) -> Result<SampleBatch>;
}

/// Random-walk Metropolis on the unnormalised log-density.
pub struct MetropolisSampler;

impl EnsembleSampler for MetropolisSampler {
    fn name(&self) -> &'static str {
        "metropolis"
    }

    fn supports(&self, _ensemble: &Ensemble) -> bool {
        true
    }

    fn sample(&self, ensemble: &Ensemble, config: &ChainConfig, master_seed: u64) -> Result<SampleBatch> {
        match ensemble {
            Ensemble::Line(s) => sample_me(s, config, master_seed),
            Ensemble::Circle(s) => sample_ce(s, config, master_seed),
        }
    }
}

/// Exact Gaussian tridiagonal model; only Gaussian weights.
pub struct TridiagonalSampler;

impl EnsembleSampler for TridiagonalSampler {
    fn name(&self) -> &'static str {
        "tridiagonal"
    }

    fn supports(&self, ensemble: &Ensemble) -> bool {
        matches!(ensemble, Ensemble::Line(EnsembleSpec { weight: Weight::Gaussian { .. }, .. }))
    }

    fn sample(&self, ensemble: &Ensemble, config: &ChainConfig, master_seed: u64) -> Result<SampleBatch> {
        let Ensemble::Line(EnsembleSpec { beta, n, weight: Weight::Gaussian { c } }) = *ensemble else {
            return Err(domain(format!("tridiagonal sampler cannot draw from {ensemble}")));
        };
        // The matrix model has weight e^{-x²/2}; rescale to e^{-c x²}.
        let base = sample_gaussian_tridiag(beta, n, config.chains, master_seed)?;
        let scale = (2.0 * c).sqrt().recip();
        let rows = base.rows().map(|r| r.iter().map(|v| v * scale).collect()).collect();
        SampleBatch::from_rows(rows, n, ensemble.to_string(), master_seed, *config)
    }
}

/// Name-indexed collection of sampling strategies.
#[derive(Clone, Default)]
pub struct SamplerRegistry {
    entries: BTreeMap<&'static str, Arc<dyn EnsembleSampler>>,
}

impl SamplerRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registry holding `metropolis` and `tridiagonal`.
    pub fn builtin() -> Self {
        let mut reg = Self::new();
        reg.register(Arc::new(MetropolisSampler));
        reg.register(Arc::new(TridiagonalSampler));
        reg
    }

    pub fn register(&mut self, sampler: Arc<dyn EnsembleSampler>) {
        self.entries.insert(sampler.name(), sampler);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn EnsembleSampler>> {
        self.entries
            .get(name)
            .cloned()
            .ok_or_else(|| Error::Unknown { kind: "sampler", name: name.to_string() })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.keys().copied().collect()
    }
}

#[cfg(test)]
mod tests;
