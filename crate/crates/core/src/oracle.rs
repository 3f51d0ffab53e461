//! Deterministic nested quadrature over interlaced regions.
//!
//! This is the brute-force reference for the closed-form constants in
//! [`crate::specfun`]: it integrates the unnormalised Dixon–Anderson
//! integrands directly, gap by gap, without using any Γ-function identity.
//!
//! Each free variable is integrated with a one-dimensional Gauss rule. Under
//! [`GaussJacobi`] the variables of one gap are ordered and the
//! rule carries the exact algebraic endpoint behaviour of the integrand:
//! `|λ − a|^{s−1}` at the fixed endpoints and `|λ − λ'|^{2/(r+1)}` against the
//! previous variable of the same gap. [`GaussLegendre`] instead
//! integrates the symmetric integrand over each gap's hypercube and divides
//! by `r!`; it needs a bounded integrand and converges slowly because of the
//! pair factor on the diagonal.

#![allow(non_snake_case)]

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::density::{chord, CircDAParams, DAParams};
use crate::error::{domain, Error, Result};
use crate::sampler::{tridiag_eigenvalues, TridiagMatrix};
use crate::specfun::{ln_gamma_pos, MorrisArgs, SelbergArgs};

/// Gauss quadrature rule on `[−1, 1]` for the weight `(1 − x)^α (1 + x)^β`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub alpha: f64,
    pub beta: f64,
}

impl GaussRule {
    pub fn legendre(n: usize) -> Result<Self> {
        Self::jacobi(n, 0.0, 0.0)
    }

    /// Golub–Welsch: nodes are the eigenvalues of the Jacobi matrix; weights
    /// follow from the orthonormal polynomials at the nodes.
    pub fn jacobi(n: usize, alpha: f64, beta: f64) -> Result<Self> {
        if n == 0 {
            return Err(domain("a Gauss rule needs at least one node"));
        }
        if !(alpha > -1.0 && beta > -1.0) {
            return Err(domain(format!("Jacobi exponents must exceed -1, got ({alpha}, {beta})")));
        }
        let ab = alpha + beta;
        let diag: Vec<f64> = (0..n)
            .map(|k| {
                let k = k as f64;
                if k == 0.0 {
                    (beta - alpha) / (ab + 2.0)
                } else {
                    (beta * beta - alpha * alpha) / ((2.0 * k + ab) * (2.0 * k + ab + 2.0))
                }
            })
            .collect();
        let off: Vec<f64> = (1..n)
            .map(|k| {
                let kf = k as f64;
                let b2 = if k == 1 {
                    4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab).powi(2) * (3.0 + ab))
                } else {
                    let t = 2.0 * kf + ab;
                    4.0 * kf * (kf + alpha) * (kf + beta) * (kf + ab) / (t * t * (t + 1.0) * (t - 1.0))
                };
                b2.sqrt()
            })
            .collect();
        let nodes = tridiag_eigenvalues(&TridiagMatrix::new(diag.clone(), off.clone())?);
        let ln_mu0 = (ab + 1.0) * std::f64::consts::LN_2 + ln_gamma_pos(alpha + 1.0) + ln_gamma_pos(beta + 1.0)
            - ln_gamma_pos(ab + 2.0);
        let mu0 = ln_mu0.exp();
        let weights = nodes
            .iter()
            .map(|&x| {
                // Σ q_k(x)² with q_k orthonormal, q_0 = 1/√μ0 (so the sum is scaled by μ0).
                let mut prev = 0.0;
                let mut cur = 1.0;
                let mut sum = 1.0;
                for k in 0..n - 1 {
                    let b_prev = if k == 0 { 0.0 } else { off[k - 1] };
                    let next = ((x - diag[k]) * cur - b_prev * prev) / off[k];
                    prev = cur;
                    cur = next;
                    sum += cur * cur;
                }
                mu0 / sum
            })
            .collect();
        Ok(Self { nodes, weights, alpha, beta })
    }
}

/// How the `r` variables of one gap are laid out.
#[derive(Debug, Clone, PartialEq)]
pub enum GroupLayout {
    /// Ordered chain: `first` on the whole gap, `rest` below the previous variable.
    Ordered { first: GaussRule, rest: GaussRule },
    /// Every variable on the whole gap with the same rule; the result is divided by `r!`.
    Unordered { rule: GaussRule },
}

/// A one-dimensional rule family used for each gap of an interlaced region.
pub trait QuadratureScheme: Send + Sync {
    fn name(&self) -> &'static str;

    /// Rules for the variables of one gap whose ends carry the exponents
    /// `upper` and `lower`, with mutual exponent `pair`.
    fn layout(&self, points: usize, upper: f64, lower: f64, pair: f64) -> Result<GroupLayout>;
}

/// Gauss–Jacobi rules matching the endpoint singularities, variables ordered.
#[derive(Debug, Clone, Copy, Default)]
pub struct GaussJacobi;

impl QuadratureScheme for GaussJacobi {
    fn name(&self) -> &'static str {
        "gauss_jacobi"
    }

    fn layout(&self, points: usize, upper: f64, lower: f64, pair: f64) -> Result<GroupLayout> {
        Ok(GroupLayout::Ordered { first: GaussRule::jacobi(points, upper, lower)?, rest: GaussRule::jacobi(points, pair, lower)? })
    }
}

/// Plain Gauss–Legendre on each gap's hypercube.
#[derive(Debug, Clone, Copy, Default)]
pub struct GaussLegendre;

impl QuadratureScheme for GaussLegendre {
    fn name(&self) -> &'static str {
        "gauss_legendre"
    }

    fn layout(&self, points: usize, upper: f64, lower: f64, _pair: f64) -> Result<GroupLayout> {
        if upper < 0.0 || lower < 0.0 {
            return Err(domain("Gauss-Legendre needs a bounded integrand (exponents >= 1)"));
        }
        Ok(GroupLayout::Unordered { rule: GaussRule::legendre(points)? })
    }
}

/// Name-indexed quadrature schemes.
#[derive(Clone, Default)]
pub struct QuadRegistry {
    entries: BTreeMap<&'static str, Arc<dyn QuadratureScheme>>,
}

impl QuadRegistry {
    /// Registry holding `gauss_jacobi` and `gauss_legendre`.
    pub fn builtin() -> Self {
        let mut reg = Self::default();
        reg.register(Arc::new(GaussJacobi));
        reg.register(Arc::new(GaussLegendre));
        reg
    }

    pub fn register(&mut self, scheme: Arc<dyn QuadratureScheme>) {
        self.entries.insert(scheme.name(), scheme);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn QuadratureScheme>> {
        self.entries
            .get(name)
            .cloned()
            .ok_or_else(|| Error::Unknown { kind: "quadrature scheme", name: name.to_string() })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.keys().copied().collect()
    }
}

#[derive(Clone)]
pub struct QuadSpec {
    pub points_per_dim: usize,
    pub scheme: Arc<dyn QuadratureScheme>,
}

impl fmt::Debug for QuadSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadSpec({} x {})", self.scheme.name(), self.points_per_dim)
    }
}

impl Default for QuadSpec {
    fn default() -> Self {
        Self { points_per_dim: 64, scheme: Arc::new(GaussJacobi) }
    }
}

impl QuadSpec {
    pub fn new(points_per_dim: usize, scheme: Arc<dyn QuadratureScheme>) -> Result<Self> {
        let q = Self { points_per_dim, scheme };
        q.validate()?;
        Ok(q)
    }

    /// Looks the scheme up in [`QuadRegistry::builtin`].
    pub fn named(points_per_dim: usize, scheme: &str) -> Result<Self> {
        Self::new(points_per_dim, QuadRegistry::builtin().get(scheme)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.points_per_dim < 8 {
            return Err(domain("points_per_dim must be >= 8"));
        }
        Ok(())
    }

    fn halved(&self) -> Self {
        Self { points_per_dim: self.points_per_dim / 2, scheme: Arc::clone(&self.scheme) }
    }
}

/// A quadrature value with the error estimate `|I(p) − I(p/2)|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
}

impl QuadResult {
    pub fn rel_error(&self) -> f64 {
        self.error / self.value.abs()
    }
}

/// Largest number of nested variables accepted for line regions.
pub const MAX_LINE_DIM: usize = 6;
/// Largest number of nested variables accepted for circular regions.
pub const MAX_CIRCLE_DIM: usize = 4;

#[derive(Debug, Clone, Copy)]
enum Bound {
    Fixed(f64),
    /// The value of an earlier variable.
    Var(usize),
}

/// One integration variable: its interval and the endpoint exponents carried by the rule.
#[derive(Debug, Clone)]
struct Level {
    lo: Bound,
    hi: Bound,
    rule: GaussRule,
}

struct Nested<'a, F: Fn(&[f64]) -> f64> {
    levels: &'a [Level],
    log_integrand: F,
}

impl<F: Fn(&[f64]) -> f64> Nested<'_, F> {
    fn bound(b: Bound, vars: &[f64]) -> f64 {
        match b {
            Bound::Fixed(v) => v,
            Bound::Var(i) => vars[i],
        }
    }

    fn run(&self, vars: &mut Vec<f64>, log_rule_weight: f64) -> f64 {
        let depth = vars.len();
        if depth == self.levels.len() {
            return ((self.log_integrand)(vars) - log_rule_weight).exp();
        }
        let level = &self.levels[depth];
        let lo = Self::bound(level.lo, vars);
        let hi = Self::bound(level.hi, vars);
        let half = 0.5 * (hi - lo);
        let (al, be) = (level.rule.alpha, level.rule.beta);
        let mut sum = 0.0;
        for (&x, &w) in level.rule.nodes.iter().zip(&level.rule.weights) {
            let t = lo + half * (1.0 + x);
            // Distances computed from the nearer end keep full relative precision.
            let up = half * (1.0 - x);
            let down = half * (1.0 + x);
            let lw = if al != 0.0 { al * up.ln() } else { 0.0 } + if be != 0.0 { be * down.ln() } else { 0.0 };
            vars.push(t);
            sum += w * self.run(vars, log_rule_weight + lw);
            vars.pop();
        }
        sum * half.powf(al + be + 1.0)
    }
}

fn integrate_levels<F: Fn(&[f64]) -> f64>(levels: &[Level], log_integrand: F) -> f64 {
    let nested = Nested { levels, log_integrand };
    nested.run(&mut Vec::with_capacity(levels.len()), 0.0)
}

fn ln_factorial(k: usize) -> f64 {
    ln_gamma_pos(k as f64 + 1.0)
}

/// Builds the levels for `groups` of `r` variables, each group on `(lo, hi)`
/// with exponents `(upper, lower)` at the fixed ends.
fn group_levels(
    groups: &[(f64, f64, f64, f64)],
    r: usize,
    pair: f64,
    spec: &QuadSpec,
) -> Result<(Vec<Level>, f64)> {
    let p = spec.points_per_dim;
    let mut levels = Vec::with_capacity(groups.len() * r);
    let mut log_divisor = 0.0;
    for &(lo, hi, up_exp, lo_exp) in groups {
        match spec.scheme.layout(p, up_exp, lo_exp, pair)? {
            GroupLayout::Ordered { first, rest } => {
                let start = levels.len();
                for k in 0..r {
                    let (hi_b, rule) =
                        if k == 0 { (Bound::Fixed(hi), first.clone()) } else { (Bound::Var(start + k - 1), rest.clone()) };
                    levels.push(Level { lo: Bound::Fixed(lo), hi: hi_b, rule });
                }
            }
            GroupLayout::Unordered { rule } => {
                for _ in 0..r {
                    levels.push(Level { lo: Bound::Fixed(lo), hi: Bound::Fixed(hi), rule: rule.clone() });
                }
                log_divisor += ln_factorial(r);
            }
        }
    }
    Ok((levels, log_divisor))
}

fn with_error(spec: &QuadSpec, f: impl Fn(&QuadSpec) -> Result<f64>) -> Result<QuadResult> {
    spec.validate()?;
    let value = f(spec)?;
    let coarse = f(&spec.halved())?;
    Ok(QuadResult { value, error: (value - coarse).abs() })
}

fn log_integrand_line(params: &DAParams, lam: &[f64]) -> f64 {
    let pair = 2.0 / (params.r as f64 + 1.0);
    let mut total = 0.0;
    for (i, &li) in lam.iter().enumerate() {
        for (&a, &s) in params.a.iter().zip(&params.s) {
            if s != 1.0 {
                total += (s - 1.0) * (li - a).abs().ln();
            }
        }
        for &lk in &lam[i + 1..] {
            total += pair * (li - lk).abs().ln();
        }
    }
    total
}

/// `L_{r,n}({a_p})`: the unnormalised Dixon–Anderson integral over the interlaced region.
pub fn integrate_L(params: &DAParams, quad: &QuadSpec) -> Result<QuadResult> {
    params.validate()?;
    if params.dim() > MAX_LINE_DIM {
        return Err(domain(format!("dimension {} exceeds the cap of {MAX_LINE_DIM}", params.dim())));
    }
    let r = params.r;
    let groups: Vec<_> =
        (0..params.n() - 1).map(|j| (params.a[j + 1], params.a[j], params.s[j] - 1.0, params.s[j + 1] - 1.0)).collect();
    with_error(quad, |spec| {
        let (levels, log_div) = group_levels(&groups, r, 2.0 / (r as f64 + 1.0), spec)?;
        Ok(integrate_levels(&levels, |lam| log_integrand_line(params, lam) - log_div))
    })
}

/// `R_{r,n}({a_p}) = Π_{j<k} (a_j − a_k)^{r(s_j + s_k − 2/(r+1))}`.
pub fn eval_R(params: &DAParams) -> Result<f64> {
    params.validate()?;
    let pair = 2.0 / (params.r as f64 + 1.0);
    let r = params.r as f64;
    let mut log = 0.0;
    for j in 0..params.n() {
        for k in j + 1..params.n() {
            log += r * (params.s[j] + params.s[k] - pair) * (params.a[j] - params.a[k]).ln();
        }
    }
    Ok(log.exp())
}

/// `L / R`, which does not depend on the endpoints.
pub fn interlaced_ratio(params: &DAParams, quad: &QuadSpec) -> Result<QuadResult> {
    let l = integrate_L(params, quad)?;
    let rr = eval_R(params)?;
    Ok(QuadResult { value: l.value / rr, error: l.error / rr })
}

fn log_integrand_circle(params: &CircDAParams, psi: &[f64]) -> f64 {
    let pair = 2.0 / (params.r as f64 + 1.0);
    let mut total = 0.0;
    for (i, &pi) in psi.iter().enumerate() {
        for (&t, &al) in params.theta.iter().zip(&params.alpha) {
            if al != 1.0 {
                total += (al - 1.0) * chord(pi, t).ln();
            }
        }
        for &pk in &psi[i + 1..] {
            total += pair * chord(pi, pk).ln();
        }
    }
    total
}

/// `Q_{r,n}({e^{iθ_p}})`: the circular analogue of [`integrate_L`].
pub fn integrate_Q(params: &CircDAParams, quad: &QuadSpec) -> Result<QuadResult> {
    params.validate()?;
    if params.dim() > MAX_CIRCLE_DIM {
        return Err(domain(format!("dimension {} exceeds the cap of {MAX_CIRCLE_DIM}", params.dim())));
    }
    let n = params.n();
    let groups: Vec<_> = (0..n)
        .map(|j| {
            let (lo, hi) = params.arc(j);
            let lower_alpha = if j == 0 { params.alpha[n - 1] } else { params.alpha[j - 1] };
            (lo, hi, params.alpha[j] - 1.0, lower_alpha - 1.0)
        })
        .collect();
    let r = params.r;
    with_error(quad, |spec| {
        let (levels, log_div) = group_levels(&groups, r, 2.0 / (r as f64 + 1.0), spec)?;
        Ok(integrate_levels(&levels, |psi| log_integrand_circle(params, psi) - log_div))
    })
}

/// `S_{r,n} = Π_{j<k} |e^{iθ_j} − e^{iθ_k}|^{r(α_j + α_k − 2/(r+1))}`.
pub fn eval_S_circ(params: &CircDAParams) -> Result<f64> {
    params.validate()?;
    let pair = 2.0 / (params.r as f64 + 1.0);
    let r = params.r as f64;
    let mut log = 0.0;
    for j in 0..params.n() {
        for k in j + 1..params.n() {
            log += r * (params.alpha[j] + params.alpha[k] - pair) * chord(params.theta[j], params.theta[k]).ln();
        }
    }
    Ok(log.exp())
}

/// `Q / S`, which does not depend on the angles.
pub fn circle_ratio(params: &CircDAParams, quad: &QuadSpec) -> Result<QuadResult> {
    let q = integrate_Q(params, quad)?;
    let s = eval_S_circ(params)?;
    Ok(QuadResult { value: q.value / s, error: q.error / s })
}

/// The Selberg integral by ordered nested Gauss–Jacobi quadrature times `N!`.
pub fn selberg_quadrature(args: SelbergArgs, points: usize) -> Result<QuadResult> {
    args.validate()?;
    let n = args.n;
    let spec = QuadSpec::new(points, Arc::new(GaussJacobi))?;
    let (l1, l2, two_lam) = (args.lam1, args.lam2, 2.0 * args.lam);
    with_error(&spec, |spec| {
        let first = GaussRule::jacobi(spec.points_per_dim, l2, l1)?;
        let rest = GaussRule::jacobi(spec.points_per_dim, two_lam, l1)?;
        let levels: Vec<Level> = (0..n)
            .map(|k| Level {
                lo: Bound::Fixed(0.0),
                hi: if k == 0 { Bound::Fixed(1.0) } else { Bound::Var(k - 1) },
                rule: if k == 0 { first.clone() } else { rest.clone() },
            })
            .collect();
        let log_nfact = ln_factorial(n);
        Ok(integrate_levels(&levels, |t| {
            let mut total = log_nfact;
            for (i, &ti) in t.iter().enumerate() {
                total += l1 * ti.ln() + l2 * (1.0 - ti).ln();
                for &tk in &t[i + 1..] {
                    total += two_lam * (ti - tk).abs().ln();
                }
            }
            total
        }))
    })
}

/// The Morris integral over `(−π, π)^N` by ordered nested Gauss–Jacobi quadrature times `N!`.
pub fn morris_quadrature(args: MorrisArgs, points: usize) -> Result<QuadResult> {
    args.validate()?;
    let n = args.n;
    let spec = QuadSpec::new(points, Arc::new(GaussJacobi))?;
    let (two_a, two_lam) = (2.0 * args.a, 2.0 * args.lam);
    with_error(&spec, |spec| {
        let first = GaussRule::jacobi(spec.points_per_dim, two_a, two_a)?;
        let rest = GaussRule::jacobi(spec.points_per_dim, two_lam, two_a)?;
        let levels: Vec<Level> = (0..n)
            .map(|k| Level {
                lo: Bound::Fixed(-PI),
                hi: if k == 0 { Bound::Fixed(PI) } else { Bound::Var(k - 1) },
                rule: if k == 0 { first.clone() } else { rest.clone() },
            })
            .collect();
        let log_nfact = ln_factorial(n);
        Ok(integrate_levels(&levels, |th| {
            let mut total = log_nfact;
            for (i, &ti) in th.iter().enumerate() {
                // |1 + e^{iθ}| = 2cos(θ/2)
                total += two_a * (2.0 * (0.5 * ti).cos()).ln();
                for &tk in &th[i + 1..] {
                    total += two_lam * chord(ti, tk).ln();
                }
            }
            total
        }))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{circ_norm_log, da_norm_log, morris_log, selberg_log};

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn gauss_rules_integrate_polynomials() {
        let g = GaussRule::legendre(10).unwrap();
        let s: f64 = g.nodes.iter().zip(&g.weights).map(|(x, w)| w * x.powi(18)).sum();
        assert!((s - 2.0 / 19.0).abs() < 1e-14);
        // ∫(1−x)^{1/2}(1+x)^{−1/2} x dx = −π/2
        let g = GaussRule::jacobi(12, 0.5, -0.5).unwrap();
        let s: f64 = g.nodes.iter().zip(&g.weights).map(|(x, w)| w * x).sum();
        assert!((s + PI / 2.0).abs() < 1e-13, "{s}");
        // Chebyshev: ∫(1−x²)^{−1/2} x² dx = π/2
        let g = GaussRule::jacobi(5, -0.5, -0.5).unwrap();
        let s: f64 = g.nodes.iter().zip(&g.weights).map(|(x, w)| w * x * x).sum();
        assert!((s - PI / 2.0).abs() < 1e-13);
        assert!(GaussRule::jacobi(4, -1.0, 0.0).is_err());
    }

    #[test]
    fn integrate_l_examples() {
        let q = QuadSpec::default();
        let p = DAParams::new(1, vec![1.0, 0.0], vec![1.0, 1.0]).unwrap();
        assert!((integrate_L(&p, &q).unwrap().value - 1.0).abs() < 1e-12);
        let p = DAParams::new(1, vec![1.0, 0.0], vec![2.0, 1.0]).unwrap();
        assert!((integrate_L(&p, &q).unwrap().value - 0.5).abs() < 1e-12);
        let p = DAParams::new(1, vec![1.0, 0.5, 0.0], vec![1.0, 1.0, 1.0]).unwrap();
        assert!((integrate_L(&p, &q).unwrap().value - 0.125).abs() < 1e-12);
        let leg = QuadSpec::named(32, "gauss_legendre").unwrap();
        assert!((integrate_L(&p, &leg).unwrap().value - 0.125).abs() < 1e-3);
    }

    #[test]
    fn eval_r_examples() {
        let p = DAParams::new(1, vec![1.0, 0.0], vec![1.0, 1.0]).unwrap();
        assert_eq!(eval_R(&p).unwrap(), 1.0);
        let p = DAParams::new(1, vec![2.0, 0.0], vec![1.0, 1.0]).unwrap();
        assert!((eval_R(&p).unwrap() - 2.0).abs() < 1e-14);
        assert!(DAParams::new(1, vec![1.0], vec![1.0]).is_err());
    }

    #[test]
    fn interlaced_ratio_examples() {
        let q = QuadSpec::default();
        for a in [vec![1.0, 0.0], vec![3.0, -1.0]] {
            let p = DAParams::new(1, a, vec![1.0, 1.0]).unwrap();
            assert!((interlaced_ratio(&p, &q).unwrap().value - 1.0).abs() < 1e-12);
        }
        // Classical Dixon–Anderson: 1/Γ(3) for unit exponents.
        let p = DAParams::new(1, vec![2.0, 0.5, -1.0], vec![1.0, 1.0, 1.0]).unwrap();
        assert!(rel(interlaced_ratio(&p, &q).unwrap().value, 0.5) < 1e-10);
        let mut values = Vec::new();
        for a in [vec![1.0, 0.0], vec![2.0, -0.5], vec![0.3, 0.1]] {
            let p = DAParams::new(2, a, vec![1.5, 2.0]).unwrap();
            values.push(interlaced_ratio(&p, &q).unwrap().value);
        }
        for v in &values {
            assert!(rel(*v, values[0]) < 1e-6);
        }
        assert!(rel(values[0], da_norm_log(2, 2, &[1.5, 2.0]).unwrap().exp()) < 1e-6);
    }

    #[test]
    fn singular_endpoints_need_jacobi() {
        let p = DAParams::new(1, vec![1.0, 0.0], vec![0.5, 0.7]).unwrap();
        let leg = QuadSpec::named(16, "gauss_legendre").unwrap();
        assert!(integrate_L(&p, &leg).is_err());
        let got = integrate_L(&p, &QuadSpec::default()).unwrap().value;
        // Beta(0.5, 0.7)
        let want = (ln_gamma_pos(0.5) + ln_gamma_pos(0.7) - ln_gamma_pos(1.2)).exp();
        assert!(rel(got, want) < 1e-12);
    }

    #[test]
    fn homogeneity_in_endpoints() {
        let q = QuadSpec::default();
        let (r, s) = (2usize, vec![1.5, 1.2, 2.0]);
        let a = vec![1.0, 0.4, -0.3];
        let base = integrate_L(&DAParams::new(r, a.clone(), s.clone()).unwrap(), &q).unwrap().value;
        let scaled =
            integrate_L(&DAParams::new(r, a.iter().map(|v| 2.0 * v).collect(), s.clone()).unwrap(), &q).unwrap().value;
        let d = (r * (s.len() - 1)) as f64;
        let deg = d + d * (d - 1.0) / (r as f64 + 1.0) + d * s.iter().map(|v| v - 1.0).sum::<f64>();
        assert!(rel(scaled / base, 2f64.powf(deg)) < 1e-5);
    }

    #[test]
    fn integrate_q_examples() {
        let q = QuadSpec::default();
        let p = CircDAParams::new(1, vec![2.0 * PI], vec![1.0]).unwrap();
        assert!(rel(integrate_Q(&p, &q).unwrap().value, 2.0 * PI) < 1e-12);
        let p = CircDAParams::new(2, vec![2.0 * PI], vec![1.0]).unwrap();
        let want = morris_log(MorrisArgs::new(2, 0.0, 1.0 / 3.0)).unwrap().exp() / 2.0;
        assert!(rel(integrate_Q(&p, &q).unwrap().value, want) < 1e-6);
        let p = CircDAParams::new(1, vec![PI, 2.0 * PI], vec![1.0, 1.0]).unwrap();
        let got = integrate_Q(&p, &q).unwrap().value;
        assert!(rel(got, circ_norm_log(1, 2, &[1.0, 1.0]).unwrap().exp() * 2.0) < 1e-8);
    }

    #[test]
    fn eval_s_examples() {
        let p = CircDAParams::new(1, vec![2.0 * PI], vec![1.3]).unwrap();
        assert_eq!(eval_S_circ(&p).unwrap(), 1.0);
        let p = CircDAParams::new(1, vec![PI, 2.0 * PI], vec![1.0, 1.0]).unwrap();
        assert!((eval_S_circ(&p).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn selberg_and_morris_quadrature() {
        let got = selberg_quadrature(SelbergArgs::new(2, 0.0, 0.0, 0.5), 32).unwrap().value;
        assert!(rel(got, 1.0 / 3.0) < 1e-12);
        let args = SelbergArgs::new(3, 0.5, -0.3, 1.0 / 3.0);
        let got = selberg_quadrature(args, 48).unwrap().value;
        assert!(rel(got, selberg_log(args).unwrap().exp()) < 1e-6);
        let args = MorrisArgs::new(2, 0.5, 1.0 / 3.0);
        let got = morris_quadrature(args, 64).unwrap().value;
        assert!(rel(got, morris_log(args).unwrap().exp()) < 1e-5, "{got}");
    }

    #[test]
    fn schemes_are_selected_by_name() {
        let reg = QuadRegistry::builtin();
        assert_eq!(reg.names(), vec!["gauss_jacobi", "gauss_legendre"]);
        assert!(QuadSpec::named(16, "simpson").is_err());
        assert!(QuadSpec::named(4, "gauss_jacobi").is_err());
        let p = DAParams::new(1, vec![1.0, 0.0], vec![2.0, 3.0]).unwrap();
        let a = integrate_L(&p, &QuadSpec::named(32, "gauss_jacobi").unwrap()).unwrap().value;
        let b = integrate_L(&p, &QuadSpec::named(32, "gauss_legendre").unwrap()).unwrap().value;
        assert!((a - b).abs() < 1e-10 * a, "{a} vs {b}");
    }
}
