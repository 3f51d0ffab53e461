use std::f64::consts::PI;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Distribution, Exp1, Gamma, Normal, StandardNormal};

use crate::density::{canonical_angle, CircDAParams, CircularSpec, DAParams, EnsembleSpec, Weight};

use super::{ChainConfig, StepScale};

const TWO_PI: f64 = 2.0 * PI;

/// Per-coordinate cached values; circular targets store `(sin(θ/2), cos(θ/2))`.
pub type Aux = [f64; 2];

/// A target for single-site random-walk Metropolis.
pub trait LogTarget: Sync {
    fn dim(&self) -> usize;

    /// Overdispersed starting point inside the support.
    fn initial_state(&self, rng: &mut ChaCha8Rng) -> Vec<f64>;

    /// Starting proposal scale of coordinate `i`.
    fn initial_scale(&self, i: usize) -> f64;

    /// Unnormalised log-density of a full configuration.
    fn log_density(&self, x: &[f64]) -> f64;

    /// Cache attached to a coordinate value.
    fn aux(&self, _v: f64) -> Aux {
        [0.0, 0.0]
    }

    /// Map `current + step` back into the coordinate space (wraps angles).
    fn propose(&self, current: f64, step: f64) -> f64 {
        current + step
    }

    /// `log p(x with x_i = proposal) − log p(x)`.
    fn delta(&self, x: &[f64], aux: &[Aux], i: usize, proposal: f64, proposal_aux: &Aux) -> f64;

    /// Put the final state into canonical order.
    fn finish(&self, x: &mut [f64]);
}

/// Run one chain for `config.burn_in_sweeps` sweeps and return its final state.
pub fn run_chain<T: LogTarget + ?Sized>(target: &T, config: &ChainConfig, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut x = target.initial_state(rng);
    let d = x.len();
    let mut aux: Vec<Aux> = x.iter().map(|&v| target.aux(v)).collect();
    let (mut scale, adapt_sweeps): (Vec<f64>, usize) = match config.step_scale {
        StepScale::Adaptive => ((0..d).map(|i| target.initial_scale(i)).collect(), config.burn_in_sweeps / 2),
        StepScale::Fixed(s) => (vec![s; d], 0),
    };
    for sweep in 0..config.burn_in_sweeps {
        let adapting = sweep < adapt_sweeps;
        let gain = (1.0 + sweep as f64).powf(-0.6);
        for i in 0..d {
            let z: f64 = StandardNormal.sample(rng);
            let prop = target.propose(x[i], scale[i] * z);
            let prop_aux = target.aux(prop);
            let delta = target.delta(&x, &aux, i, prop, &prop_aux);
            let accept_prob = if delta >= 0.0 { 1.0 } else if delta.is_nan() { 0.0 } else { delta.exp() };
            if accept_prob >= 1.0 || rng.random::<f64>() < accept_prob {
                x[i] = prop;
                aux[i] = prop_aux;
            }
            if adapting {
                scale[i] *= (gain * (accept_prob - config.target_accept)).exp();
            }
        }
    }
    target.finish(&mut x);
    x
}

fn sort_desc(x: &mut [f64]) {
    x.sort_by(|a, b| b.total_cmp(a));
}

fn sort_asc(x: &mut [f64]) {
    x.sort_by(|a, b| a.total_cmp(b));
}

#[inline]
fn half_angle(v: f64) -> Aux {
    let (s, c) = (0.5 * v).sin_cos();
    [s, c]
}

/// `|e^{iu} − e^{iv}|` from half-angle caches.
#[inline]
fn chord_aux(u: &Aux, v: &Aux) -> f64 {
    2.0 * (u[0] * v[1] - u[1] * v[0]).abs()
}

/// `ME_{β,N}(g)` in unordered coordinates.
pub struct LineEnsembleTarget {
    spec: EnsembleSpec,
}

impl LineEnsembleTarget {
    pub fn new(spec: EnsembleSpec) -> Self {
        Self { spec }
    }

    /// Typical total extent of the equilibrium configuration.
    fn spread(&self) -> f64 {
        let n = self.spec.n as f64;
        let beta = self.spec.beta;
        match self.spec.weight {
            Weight::Jacobi { .. } => 1.0,
            Weight::Laguerre { a, c } => ((a + 1.0) + beta * (n - 1.0)).max(1.0) / c,
            Weight::Gaussian { c } => 2.0 * ((1.0 + beta * (n - 1.0) / 2.0) / (2.0 * c)).sqrt(),
        }
    }
}

impl LogTarget for LineEnsembleTarget {
    fn dim(&self) -> usize {
        self.spec.n
    }

    fn initial_state(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        let n = self.spec.n;
        let beta = self.spec.beta;
        let nf = n as f64;
        // Base distribution of the weight, stretched so its mean square matches the ensemble's.
        let mut x: Vec<f64> = match self.spec.weight {
            Weight::Jacobi { a, b } => {
                let dist = Beta::new(a + 1.0, b + 1.0).expect("valid beta parameters");
                (0..n).map(|_| dist.sample(rng)).collect()
            }
            Weight::Laguerre { a, c } => {
                let mean = ((a + 1.0) + beta * (nf - 1.0) / 2.0) / c;
                let dist = Gamma::new(a + 1.0, mean / (a + 1.0)).expect("valid gamma parameters");
                (0..n).map(|_| dist.sample(rng)).collect()
            }
            Weight::Gaussian { c } => {
                let sd = ((1.0 + beta * (nf - 1.0) / 2.0) / (2.0 * c)).sqrt();
                let dist = Normal::new(0.0, sd).expect("valid normal parameters");
                (0..n).map(|_| dist.sample(rng)).collect()
            }
        };
        sort_desc(&mut x);
        x
    }

    fn initial_scale(&self, _i: usize) -> f64 {
        self.spread() / (self.spec.n as f64 + 1.0)
    }

    fn log_density(&self, x: &[f64]) -> f64 {
        crate::density::log_density_me(&self.spec, x).unwrap_or(f64::NEG_INFINITY)
    }

    fn delta(&self, x: &[f64], _aux: &[Aux], i: usize, proposal: f64, _pa: &Aux) -> f64 {
        let w = &self.spec.weight;
        if !w.in_support(proposal) {
            return f64::NEG_INFINITY;
        }
        let old = x[i];
        let mut ratio = 1.0;
        for (k, &xk) in x.iter().enumerate() {
            if k != i {
                ratio *= (proposal - xk).abs() / (old - xk).abs();
            }
        }
        w.ln_weight(proposal) - w.ln_weight(old) + self.spec.beta * ratio.ln()
    }

    fn finish(&self, x: &mut [f64]) {
        sort_desc(x);
    }
}

/// `CE^b_{β,N}` with angles kept in `[0, 2π)`.
pub struct CircleEnsembleTarget {
    spec: CircularSpec,
}

impl CircleEnsembleTarget {
    pub fn new(spec: CircularSpec) -> Self {
        Self { spec }
    }
}

impl LogTarget for CircleEnsembleTarget {
    fn dim(&self) -> usize {
        self.spec.n
    }

    fn initial_state(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        (0..self.spec.n).map(|_| rng.random::<f64>() * TWO_PI).collect()
    }

    fn initial_scale(&self, _i: usize) -> f64 {
        PI / self.spec.n as f64
    }

    fn log_density(&self, x: &[f64]) -> f64 {
        crate::density::log_density_ce(&self.spec, x).unwrap_or(f64::NEG_INFINITY)
    }

    fn aux(&self, v: f64) -> Aux {
        half_angle(v)
    }

    fn propose(&self, current: f64, step: f64) -> f64 {
        canonical_angle(current + step)
    }

    fn delta(&self, _x: &[f64], aux: &[Aux], i: usize, _proposal: f64, pa: &Aux) -> f64 {
        let old = &aux[i];
        let mut ratio = 1.0;
        for (k, ak) in aux.iter().enumerate() {
            if k != i {
                ratio *= chord_aux(pa, ak) / chord_aux(old, ak);
            }
        }
        let mut delta = self.spec.beta * ratio.ln();
        if self.spec.b != 0.0 {
            // |1 − e^{iθ}| = 2|sin(θ/2)|
            delta += self.spec.b * (pa[0].abs() / old[0].abs()).ln();
        }
        delta
    }

    fn finish(&self, x: &mut [f64]) {
        sort_asc(x);
    }
}

/// Generalised Dixon–Anderson density on the line with `r` free points per gap.
///
/// The top gap may be unbounded (`hi = +inf`) with an `e^{−linear·λ}` factor,
/// which is the large-endpoint (Laguerre) limit of the finite density.
pub struct LineDaTarget {
    r: usize,
    pair: f64,
    gaps: Vec<(f64, f64)>,
    anchors: Vec<(f64, f64)>,
    linear: f64,
}

impl LineDaTarget {
    pub fn from_params(params: &DAParams) -> Self {
        let gaps = params.a.windows(2).map(|w| (w[1], w[0])).collect();
        let anchors = params.a.iter().zip(&params.s).map(|(&a, &s)| (a, s - 1.0)).collect();
        Self::build(params.r, gaps, anchors, 0.0)
    }

    /// Limit `a_1 → ∞` with `(a_1 − λ)^{s_1 − 1} → e^{−linear·λ}`.
    ///
    /// `a_rest` and `s_rest` are the remaining endpoints `a_2 > … > a_n` and
    /// their exponents; there are `r` points above `a_2` and `r` in every gap below.
    pub fn unbounded_top(r: usize, a_rest: &[f64], s_rest: &[f64], linear: f64) -> Self {
        assert_eq!(a_rest.len(), s_rest.len());
        assert!(!a_rest.is_empty());
        let mut gaps = vec![(a_rest[0], f64::INFINITY)];
        gaps.extend(a_rest.windows(2).map(|w| (w[1], w[0])));
        let anchors = a_rest.iter().zip(s_rest).map(|(&a, &s)| (a, s - 1.0)).collect();
        Self::build(r, gaps, anchors, linear)
    }

    fn build(r: usize, gaps: Vec<(f64, f64)>, anchors: Vec<(f64, f64)>, linear: f64) -> Self {
        let anchors = anchors.into_iter().filter(|&(_, e)| e != 0.0).collect();
        Self { r, pair: 2.0 / (r as f64 + 1.0), gaps, anchors, linear }
    }

    fn gap_of(&self, i: usize) -> (f64, f64) {
        self.gaps[i / self.r]
    }
}

impl LogTarget for LineDaTarget {
    fn dim(&self) -> usize {
        self.r * self.gaps.len()
    }

    fn initial_state(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        let mut x = Vec::with_capacity(self.dim());
        for &(lo, hi) in &self.gaps {
            let mut block: Vec<f64> = (0..self.r)
                .map(|_| {
                    if hi.is_finite() {
                        lo + (hi - lo) * rng.random::<f64>()
                    } else {
                        let e: f64 = Exp1.sample(rng);
                        lo + e * (self.r as f64) / self.linear.max(1e-3)
                    }
                })
                .collect();
            sort_desc(&mut block);
            x.extend(block);
        }
        x
    }

    fn initial_scale(&self, i: usize) -> f64 {
        let (lo, hi) = self.gap_of(i);
        let width = if hi.is_finite() { hi - lo } else { (self.r as f64 + 1.0) / self.linear.max(1e-3) };
        width / (self.r as f64 + 1.0)
    }

    fn log_density(&self, x: &[f64]) -> f64 {
        let mut total = 0.0;
        for (i, &xi) in x.iter().enumerate() {
            let (lo, hi) = self.gap_of(i);
            if !(xi > lo && xi < hi) {
                return f64::NEG_INFINITY;
            }
            for &xk in &x[i + 1..] {
                total += self.pair * (xi - xk).abs().ln();
            }
            for &(a, e) in &self.anchors {
                total += e * (xi - a).abs().ln();
            }
            total -= self.linear * xi;
        }
        total
    }

    fn delta(&self, x: &[f64], _aux: &[Aux], i: usize, proposal: f64, _pa: &Aux) -> f64 {
        let (lo, hi) = self.gap_of(i);
        if !(proposal > lo && proposal < hi) {
            return f64::NEG_INFINITY;
        }
        let old = x[i];
        let mut ratio = 1.0;
        for (k, &xk) in x.iter().enumerate() {
            if k != i {
                ratio *= (proposal - xk).abs() / (old - xk).abs();
            }
        }
        let mut delta = self.pair * ratio.ln() - self.linear * (proposal - old);
        for &(a, e) in &self.anchors {
            delta += e * ((proposal - a).abs() / (old - a).abs()).ln();
        }
        delta
    }

    fn finish(&self, x: &mut [f64]) {
        for block in x.chunks_mut(self.r) {
            sort_desc(block);
        }
    }
}

/// Circular generalised Dixon–Anderson density with `r` free angles per arc.
pub struct CircleDaTarget {
    r: usize,
    pair: f64,
    arcs: Vec<(f64, f64)>,
    anchors: Vec<(Aux, f64)>,
}

impl CircleDaTarget {
    pub fn from_params(params: &CircDAParams) -> Self {
        let arcs = (0..params.n()).map(|j| params.arc(j)).collect();
        let anchors = params
            .theta
            .iter()
            .zip(&params.alpha)
            .filter(|(_, &a)| a != 1.0)
            .map(|(&t, &a)| (half_angle(t), a - 1.0))
            .collect();
        Self { r: params.r, pair: 2.0 / (params.r as f64 + 1.0), arcs, anchors }
    }

    fn arc_of(&self, i: usize) -> (f64, f64) {
        self.arcs[i / self.r]
    }
}

impl LogTarget for CircleDaTarget {
    fn dim(&self) -> usize {
        self.r * self.arcs.len()
    }

    fn initial_state(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        let mut x = Vec::with_capacity(self.dim());
        for &(lo, hi) in &self.arcs {
            let mut block: Vec<f64> = (0..self.r).map(|_| lo + (hi - lo) * rng.random::<f64>()).collect();
            sort_asc(&mut block);
            x.extend(block);
        }
        x
    }

    fn initial_scale(&self, i: usize) -> f64 {
        let (lo, hi) = self.arc_of(i);
        (hi - lo) / (self.r as f64 + 1.0)
    }

    fn log_density(&self, x: &[f64]) -> f64 {
        let aux: Vec<Aux> = x.iter().map(|&v| half_angle(v)).collect();
        let mut total = 0.0;
        for (i, &xi) in x.iter().enumerate() {
            let (lo, hi) = self.arc_of(i);
            if !(xi > lo && xi < hi) {
                return f64::NEG_INFINITY;
            }
            for ak in &aux[i + 1..] {
                total += self.pair * chord_aux(&aux[i], ak).ln();
            }
            for (t, e) in &self.anchors {
                total += e * chord_aux(&aux[i], t).ln();
            }
        }
        total
    }

    fn aux(&self, v: f64) -> Aux {
        half_angle(v)
    }

    fn delta(&self, _x: &[f64], aux: &[Aux], i: usize, proposal: f64, pa: &Aux) -> f64 {
        let (lo, hi) = self.arc_of(i);
        if !(proposal > lo && proposal < hi) {
            return f64::NEG_INFINITY;
        }
        let old = &aux[i];
        let mut ratio = 1.0;
        for (k, ak) in aux.iter().enumerate() {
            if k != i {
                ratio *= chord_aux(pa, ak) / chord_aux(old, ak);
            }
        }
        let mut delta = self.pair * ratio.ln();
        for (t, e) in &self.anchors {
            delta += e * (chord_aux(pa, t) / chord_aux(old, t)).ln();
        }
        delta
    }

    fn finish(&self, x: &mut [f64]) {
        for block in x.chunks_mut(self.r) {
            sort_asc(block);
        }
    }
}
