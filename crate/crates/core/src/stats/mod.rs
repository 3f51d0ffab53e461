//! Empirical statistics and the Monte Carlo verifiers built on them.

mod relations;
mod verify;

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};
use crate::sampler::SampleBatch;
use crate::specfun::{ln_gamma_pos, selberg_log, SelbergArgs};

pub use relations::{DecimationRelation, RelationParams, RelationRegistry};
pub use verify::{
    verify_composition, verify_decimation_relation, verify_gap_formula, verify_spacing, verify_superposition,
    verify_tridiagonal, DecimationOutcome, NegativeControl, SuperpositionCase, VerifyOptions,
};

const TWO_PI: f64 = 2.0 * PI;

/// Two-sample Kolmogorov–Smirnov statistic and asymptotic p-value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsResult {
    pub d: f64,
    pub p_value: f64,
    pub n1: usize,
    pub n2: usize,
}

/// Exact `sup |F₁ − F₂|`; p from the Kolmogorov distribution at `√(n₁n₂/(n₁+n₂))·D`.
pub fn ks_two_sample(x: &[f64], y: &[f64]) -> Result<KsResult> {
    if x.is_empty() || y.is_empty() {
        return Err(domain("KS test needs two non-empty samples"));
    }
    if x.iter().chain(y).any(|v| v.is_nan()) {
        return Err(Error::NotANumber("KS sample"));
    }
    let mut xs = x.to_vec();
    let mut ys = y.to_vec();
    xs.sort_by(|a, b| a.total_cmp(b));
    ys.sort_by(|a, b| a.total_cmp(b));
    let (n1, n2) = (xs.len(), ys.len());
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < n1 && j < n2 {
        let v = xs[i].min(ys[j]);
        while i < n1 && xs[i] == v {
            i += 1;
        }
        while j < n2 && ys[j] == v {
            j += 1;
        }
        d = d.max((i as f64 / n1 as f64 - j as f64 / n2 as f64).abs());
    }
    let ne = (n1 as f64 * n2 as f64) / (n1 + n2) as f64;
    Ok(KsResult { d, p_value: kolmogorov_q(ne.sqrt() * d), n1, n2 })
}

/// `P(K > λ)` for the Kolmogorov distribution.
pub fn kolmogorov_q(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 1.0;
    }
    if lambda < 1.18 {
        // Theta-function form, accurate where the alternating series converges slowly.
        let c = -PI * PI / (8.0 * lambda * lambda);
        let mut sum = 0.0;
        for k in 1..=100 {
            let m = (2 * k - 1) as f64;
            let term = (c * m * m).exp();
            sum += term;
            if term < f64::EPSILON * sum {
                break;
            }
        }
        (1.0 - TWO_PI.sqrt() / lambda * sum).clamp(0.0, 1.0)
    } else {
        let mut sum = 0.0;
        for k in 1..=100 {
            let kf = k as f64;
            let term = (-2.0 * kf * kf * lambda * lambda).exp();
            sum += if k % 2 == 1 { term } else { -term };
            if term < f64::EPSILON * sum.abs() {
                break;
            }
        }
        (2.0 * sum).clamp(0.0, 1.0)
    }
}

/// Equal-width histogram normalised to a probability density.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub density: Vec<f64>,
}

impl Histogram {
    pub fn from_samples(values: &[f64], bins: usize) -> Result<Self> {
        if bins == 0 || values.is_empty() {
            return Err(domain("histogram needs bins >= 1 and at least one value"));
        }
        let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
        let mut hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if hi <= lo {
            hi = lo + 1.0;
        }
        let width = (hi - lo) / bins as f64;
        let mut counts = vec![0usize; bins];
        for &v in values {
            let idx = (((v - lo) / width) as usize).min(bins - 1);
            counts[idx] += 1;
        }
        let total = values.len() as f64 * width;
        Ok(Self {
            edges: (0..=bins).map(|k| lo + k as f64 * width).collect(),
            density: counts.into_iter().map(|c| c as f64 / total).collect(),
        })
    }

    pub fn centers(&self) -> Vec<f64> {
        self.edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
    }

    pub fn mean(&self) -> f64 {
        let w = self.edges[1] - self.edges[0];
        self.centers().iter().zip(&self.density).map(|(c, d)| c * d * w).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extreme {
    Max,
    Min,
}

/// Density of the `(k+1)`-st largest (`Max`) or smallest (`Min`) value of each row.
///
/// This is the marginal law of that order statistic, i.e. the event
/// "an eigenvalue at s with exactly k others beyond it" integrated over positions.
pub fn order_stat_pdf_estimate(batch: &SampleBatch, k: usize, kind: Extreme, bins: usize) -> Result<Histogram> {
    let d = batch.dim();
    if k >= d {
        return Err(domain(format!("order statistic {k} out of range for dimension {d}")));
    }
    let values: Vec<f64> = batch
        .rows()
        .map(|row| {
            let mut sorted = row.to_vec();
            sorted.sort_by(|a, b| b.total_cmp(a));
            match kind {
                Extreme::Max => sorted[k],
                Extreme::Min => sorted[d - 1 - k],
            }
        })
        .collect();
    Histogram::from_samples(&values, bins)
}

/// `(θ_{j+k+1} − θ_j) mod 2π` for one row of increasing angles and start index `j`.
pub fn circular_spacing(row: &[f64], j: usize, k: usize) -> f64 {
    let n = row.len();
    let end = (j + k + 1) % n;
    let gap = row[end] - row[j];
    if end > j {
        gap
    } else {
        gap + TWO_PI
    }
}

/// Histogram of `(k+1)`-st neighbour spacings pooled over every start index, with wraparound.
pub fn spacing_pdf_estimate(batch: &SampleBatch, k: usize, bins: usize) -> Result<Histogram> {
    let n = batch.dim();
    if k + 1 >= n {
        return Err(domain(format!("spacing order k = {k} needs k + 1 < N = {n}")));
    }
    let values: Vec<f64> = batch.rows().flat_map(|row| (0..n).map(move |j| circular_spacing(row, j, k))).collect();
    Histogram::from_samples(&values, bins)
}

/// Probability that `ME_{1,N+1}(x^a(1−x)^b)` has exactly one eigenvalue in each
/// interval cut out by the `N` interior points.
pub fn gap_prob_closed_form(a: f64, b: f64, interior: &[f64]) -> Result<f64> {
    if interior.iter().any(|&v| !(v > 0.0 && v < 1.0)) {
        return Err(domain("interior points must lie strictly inside (0, 1)"));
    }
    if interior.windows(2).any(|w| w[0] < w[1]) {
        return Err(domain("interior points must be decreasing"));
    }
    if interior.windows(2).any(|w| w[0] == w[1]) {
        return Ok(0.0);
    }
    let n = interior.len();
    let np1 = n + 1;
    let ln_c = selberg_log(SelbergArgs::new(np1, a, b, 0.5))? - ln_gamma_pos(np1 as f64 + 1.0);
    let mut log = ln_gamma_pos(a + 1.0) + ln_gamma_pos(b + 1.0) - ln_gamma_pos(a + b + n as f64 + 2.0) - ln_c;
    for (j, &aj) in interior.iter().enumerate() {
        log += (a + 1.0) * aj.ln() + (b + 1.0) * (1.0 - aj).ln();
        for &ak in &interior[j + 1..] {
            log += (aj - ak).ln();
        }
    }
    Ok(log.exp().min(1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalingKind {
    Soft,
    Hard,
    BulkCircle,
}

impl FromStr for ScalingKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "soft" => Ok(Self::Soft),
            "hard" => Ok(Self::Hard),
            "bulk_circle" => Ok(Self::BulkCircle),
            other => Err(Error::Unknown { kind: "scaling map", name: other.to_string() }),
        }
    }
}

/// Edge and bulk scalings of finite-`N` ensembles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingMap {
    pub kind: ScalingKind,
    pub beta: f64,
    pub n: usize,
    pub c: f64,
    /// Free length scale of the soft or hard edge map; unused for the bulk.
    pub scale_const: f64,
}

impl ScalingMap {
    pub fn new(kind: ScalingKind, beta: f64, n: usize, c: f64, scale_const: f64) -> Result<Self> {
        if !(scale_const > 0.0 && beta > 0.0 && c > 0.0) || n == 0 {
            return Err(domain("scaling map needs beta, c, scale > 0 and N >= 1"));
        }
        Ok(Self { kind, beta, n, c, scale_const })
    }

    /// Unscaled coordinate corresponding to the scaled variable `x`.
    pub fn apply(&self, x: f64) -> f64 {
        let nf = self.n as f64;
        let pre = self.beta / (2.0 * self.c);
        match self.kind {
            ScalingKind::Soft => pre * (4.0 * nf + 2.0 * (2.0 * nf).cbrt() * self.scale_const * x),
            ScalingKind::Hard => pre * x / (4.0 * nf * self.scale_const),
            ScalingKind::BulkCircle => TWO_PI * x / nf,
        }
    }

    /// `d apply / dx`.
    pub fn linear_coefficient(&self) -> f64 {
        self.apply(1.0) - self.apply(0.0)
    }
}

/// One per-position KS comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositionTest {
    /// 1-based position in canonical order.
    pub position: usize,
    pub ks: KsResult,
}

/// Monte Carlo mean (or probability) compared with its exact value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateCheck {
    pub estimate: f64,
    pub std_error: f64,
    pub closed_form: f64,
    pub samples: usize,
}

impl EstimateCheck {
    pub fn within(&self, n_se: f64) -> bool {
        (self.estimate - self.closed_form).abs() <= n_se * self.std_error
    }
}

/// Outcome of one verification.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub relation: String,
    pub r: usize,
    pub n: usize,
    pub tests: Vec<PositionTest>,
    pub probability: Option<EstimateCheck>,
    pub threshold: f64,
    pub pass: bool,
    pub seed: u64,
    pub runtime_secs: f64,
}

impl VerificationReport {
    pub fn from_tests(relation: String, r: usize, n: usize, tests: Vec<PositionTest>, threshold: f64, seed: u64) -> Self {
        let pass = !tests.is_empty() && tests.iter().all(|t| t.ks.p_value > threshold);
        Self { relation, r, n, tests, probability: None, threshold, pass, seed, runtime_secs: 0.0 }
    }

    pub fn min_p_value(&self) -> f64 {
        self.tests.iter().map(|t| t.ks.p_value).fold(1.0, f64::min)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} r={} N={}: {}", self.relation, self.r, self.n, if self.pass { "PASS" } else { "FAIL" })?;
        if !self.tests.is_empty() {
            write!(f, " (min p = {:.4}, threshold {})", self.min_p_value(), self.threshold)?;
        }
        if let Some(p) = &self.probability {
            write!(f, " (MC {:.5} ± {:.5}, closed form {:.5})", p.estimate, p.std_error, p.closed_form)?;
        }
        Ok(())
    }
}

/// Per-position KS between two batches with equal dimension.
pub fn per_position_ks(lhs: &SampleBatch, rhs: &SampleBatch, positions: usize) -> Result<Vec<PositionTest>> {
    if positions > lhs.dim() || positions > rhs.dim() {
        return Err(Error::Dimension { expected: positions, got: lhs.dim().min(rhs.dim()) });
    }
    (0..positions)
        .map(|j| Ok(PositionTest { position: j + 1, ks: ks_two_sample(&lhs.column(j), &rhs.column(j))? }))
        .collect()
}
