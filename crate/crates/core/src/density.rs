//! Log-densities of line and circular β-ensembles and of the generalised
//! Dixon–Anderson conditional densities, with their interlacing predicates.
//!
//! Ensemble densities are unnormalised (the Metropolis sampler only needs
//! ratios). Dixon–Anderson densities are normalised with the constants from
//! [`crate::specfun`]. Any coincidence or support violation evaluates to
//! exactly `-inf`.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{check_len, domain, Error, Result};
use crate::specfun;

const TWO_PI: f64 = 2.0 * PI;

/// One-body weight `g(x)` of a line ensemble.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Weight {
    /// `x^a (1 − x)^b` on `(0, 1)`.
    Jacobi { a: f64, b: f64 },
    /// `x^a e^{−c x}` on `(0, ∞)`.
    Laguerre { a: f64, c: f64 },
    /// `e^{−c x²}` on the real line.
    Gaussian { c: f64 },
}

impl Weight {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            Weight::Jacobi { a, b } => a > -1.0 && b > -1.0,
            Weight::Laguerre { a, c } => a > -1.0 && c > 0.0,
            Weight::Gaussian { c } => c > 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(domain(format!("weight parameters outside convergence domain: {self}")))
        }
    }

    pub fn in_support(&self, x: f64) -> bool {
        match self {
            Weight::Jacobi { .. } => x > 0.0 && x < 1.0,
            Weight::Laguerre { .. } => x > 0.0 && x.is_finite(),
            Weight::Gaussian { .. } => x.is_finite(),
        }
    }

    /// `ln g(x)`, `-inf` off the support.
    pub fn ln_weight(&self, x: f64) -> f64 {
        if !self.in_support(x) {
            return f64::NEG_INFINITY;
        }
        match *self {
            Weight::Jacobi { a, b } => xlogy(a, x) + xlogy(b, 1.0 - x),
            Weight::Laguerre { a, c } => xlogy(a, x) - c * x,
            Weight::Gaussian { c } => -c * x * x,
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Jacobi { a, b } => write!(f, "jacobi(a={a},b={b})"),
            Weight::Laguerre { a, c } => write!(f, "laguerre(a={a},c={c})"),
            Weight::Gaussian { c } => write!(f, "gaussian(c={c})"),
        }
    }
}

/// `k ln y` with the convention `0 · ln 0 = 0`.
#[inline]
pub(crate) fn xlogy(k: f64, y: f64) -> f64 {
    if k == 0.0 {
        0.0
    } else {
        k * y.ln()
    }
}

/// `|e^{ia} − e^{ib}|`.
#[inline]
pub fn chord(a: f64, b: f64) -> f64 {
    (2.0 * (0.5 * (a - b)).sin()).abs()
}

/// Reduce an angle to `[0, 2π)`.
#[inline]
pub fn canonical_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TWO_PI);
    if t >= TWO_PI {
        0.0
    } else {
        t
    }
}

/// `ME_{β,N}(g)`: density ∝ `Π g(x_l) Π_{j<k} |x_k − x_j|^β`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleSpec {
    pub beta: f64,
    pub n: usize,
    pub weight: Weight,
}

impl EnsembleSpec {
    pub fn new(beta: f64, n: usize, weight: Weight) -> Result<Self> {
        let spec = Self { beta, n, weight };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.beta > 0.0) || !self.beta.is_finite() {
            return Err(domain(format!("beta must be > 0, got {}", self.beta)));
        }
        if self.n == 0 {
            return Err(domain("ensemble size must be >= 1"));
        }
        self.weight.validate()
    }
}

impl fmt::Display for EnsembleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ME[beta={},N={}]({})", self.beta, self.n, self.weight)
    }
}

/// `CE^b_{β,N}`: density ∝ `Π |1 − e^{iθ_l}|^b Π_{j<k} |e^{iθ_k} − e^{iθ_j}|^β`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircularSpec {
    pub beta: f64,
    pub n: usize,
    pub b: f64,
}

impl CircularSpec {
    pub fn new(beta: f64, n: usize, b: f64) -> Result<Self> {
        let spec = Self { beta, n, b };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.beta > 0.0) || !self.beta.is_finite() {
            return Err(domain(format!("beta must be > 0, got {}", self.beta)));
        }
        if self.n == 0 {
            return Err(domain("ensemble size must be >= 1"));
        }
        if !(self.b >= 0.0) {
            return Err(domain(format!("circular exponent b must be >= 0, got {}", self.b)));
        }
        Ok(())
    }
}

impl fmt::Display for CircularSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CE[beta={},N={},b={}]", self.beta, self.n, self.b)
    }
}

/// Either kind of ensemble.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Ensemble {
    Line(EnsembleSpec),
    Circle(CircularSpec),
}

impl Ensemble {
    pub fn size(&self) -> usize {
        match self {
            Ensemble::Line(s) => s.n,
            Ensemble::Circle(s) => s.n,
        }
    }

    pub fn beta(&self) -> f64 {
        match self {
            Ensemble::Line(s) => s.beta,
            Ensemble::Circle(s) => s.beta,
        }
    }

    pub fn is_circle(&self) -> bool {
        matches!(self, Ensemble::Circle(_))
    }

    /// Copy with a different inverse temperature.
    pub fn with_beta(&self, beta: f64) -> Self {
        match *self {
            Ensemble::Line(s) => Ensemble::Line(EnsembleSpec { beta, ..s }),
            Ensemble::Circle(s) => Ensemble::Circle(CircularSpec { beta, ..s }),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Ensemble::Line(s) => s.validate(),
            Ensemble::Circle(s) => s.validate(),
        }
    }

    pub fn log_density(&self, x: &[f64]) -> Result<f64> {
        match self {
            Ensemble::Line(s) => log_density_me(s, x),
            Ensemble::Circle(s) => log_density_ce(s, x),
        }
    }
}

impl fmt::Display for Ensemble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ensemble::Line(s) => s.fmt(f),
            Ensemble::Circle(s) => s.fmt(f),
        }
    }
}

/// Parameters of the generalised Dixon–Anderson density on the line:
/// `r` points in each of the `n − 1` gaps of `a_1 > … > a_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct DAParams {
    pub r: usize,
    pub a: Vec<f64>,
    pub s: Vec<f64>,
}

impl DAParams {
    pub fn new(r: usize, a: Vec<f64>, s: Vec<f64>) -> Result<Self> {
        let p = Self { r, a, s };
        p.validate()?;
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    /// Number of free variables `r(n − 1)`.
    pub fn dim(&self) -> usize {
        self.r * (self.n() - 1)
    }

    pub fn validate(&self) -> Result<()> {
        if self.r == 0 {
            return Err(domain("r must be >= 1"));
        }
        if self.a.len() < 2 {
            return Err(domain("Dixon-Anderson density needs n >= 2 endpoints"));
        }
        check_len(self.a.len(), self.s.len())?;
        if self.a.iter().any(|v| !v.is_finite()) {
            return Err(domain("endpoints must be finite"));
        }
        if self.a.windows(2).any(|w| !(w[0] > w[1])) {
            return Err(domain("endpoints must be strictly decreasing"));
        }
        if self.s.iter().any(|&v| !(v > 0.0)) {
            return Err(domain("exponents s_p must be > 0"));
        }
        Ok(())
    }

    pub fn norm_log(&self) -> Result<f64> {
        specfun::da_norm_log(self.r, self.n(), &self.s)
    }
}

/// Parameters of the circular generalised Dixon–Anderson density:
/// `r` angles on each arc `(θ_{j−1}, θ_j)` with `θ_0 = 0`, `θ_n = 2π`.
#[derive(Debug, Clone, PartialEq)]
pub struct CircDAParams {
    pub r: usize,
    pub theta: Vec<f64>,
    pub alpha: Vec<f64>,
}

impl CircDAParams {
    pub fn new(r: usize, theta: Vec<f64>, alpha: Vec<f64>) -> Result<Self> {
        let p = Self { r, theta, alpha };
        p.validate()?;
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.theta.len()
    }

    pub fn dim(&self) -> usize {
        self.r * self.n()
    }

    pub fn validate(&self) -> Result<()> {
        if self.r == 0 {
            return Err(domain("r must be >= 1"));
        }
        if self.theta.is_empty() {
            return Err(domain("circular density needs n >= 1"));
        }
        check_len(self.theta.len(), self.alpha.len())?;
        let last = *self.theta.last().unwrap();
        if (last - TWO_PI).abs() > 1e-12 {
            return Err(domain("theta_n must equal 2*pi"));
        }
        if !(self.theta[0] > 0.0) || self.theta.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(domain("theta must be strictly increasing in (0, 2*pi]"));
        }
        if self.alpha.iter().any(|&v| !(v > 0.0)) {
            return Err(domain("exponents alpha_p must be > 0"));
        }
        Ok(())
    }

    /// Arc `j` (0-based) as `(lower, upper)`.
    pub fn arc(&self, j: usize) -> (f64, f64) {
        let lo = if j == 0 { 0.0 } else { self.theta[j - 1] };
        (lo, self.theta[j])
    }

    pub fn norm_log(&self) -> Result<f64> {
        specfun::circ_norm_log(self.r, self.n(), &self.alpha)
    }
}

fn check_finite(x: &[f64], what: &'static str) -> Result<()> {
    if x.iter().any(|v| v.is_nan()) {
        Err(Error::NotANumber(what))
    } else {
        Ok(())
    }
}

/// `a_j > λ_{r(j−1)+1} > … > λ_{rj} > a_{j+1}` for every gap `j`.
pub fn interlaces_line(params: &DAParams, lam: &[f64]) -> Result<bool> {
    check_len(params.dim(), lam.len())?;
    let r = params.r;
    Ok(params.a.windows(2).enumerate().all(|(j, w)| {
        let (hi, lo) = (w[0], w[1]);
        let block = &lam[r * j..r * (j + 1)];
        hi > block[0] && block.windows(2).all(|p| p[0] > p[1]) && block[r - 1] > lo
    }))
}

/// `θ_{j−1} < ψ_{r(j−1)+1} < … < ψ_{rj} < θ_j` for every arc `j`, with `θ_0 = 0`.
pub fn interlaces_circle(params: &CircDAParams, psi: &[f64]) -> Result<bool> {
    check_len(params.dim(), psi.len())?;
    let r = params.r;
    Ok((0..params.n()).all(|j| {
        let (lo, hi) = params.arc(j);
        let block = &psi[r * j..r * (j + 1)];
        lo < block[0] && block.windows(2).all(|p| p[0] < p[1]) && block[r - 1] < hi
    }))
}

/// Unnormalised `ln` of the line ensemble density.
pub fn log_density_me(spec: &EnsembleSpec, x: &[f64]) -> Result<f64> {
    check_len(spec.n, x.len())?;
    check_finite(x, "log_density_me")?;
    let mut total = 0.0;
    for (i, &xi) in x.iter().enumerate() {
        let w = spec.weight.ln_weight(xi);
        if w == f64::NEG_INFINITY {
            return Ok(f64::NEG_INFINITY);
        }
        total += w;
        for &xk in &x[i + 1..] {
            let d = (xi - xk).abs();
            if d == 0.0 {
                return Ok(f64::NEG_INFINITY);
            }
            total += spec.beta * d.ln();
        }
    }
    Ok(total)
}

/// Unnormalised `ln` of the circular Jacobi ensemble density.
pub fn log_density_ce(spec: &CircularSpec, theta: &[f64]) -> Result<f64> {
    check_len(spec.n, theta.len())?;
    check_finite(theta, "log_density_ce")?;
    let t: Vec<f64> = theta.iter().map(|&v| canonical_angle(v)).collect();
    let mut total = 0.0;
    for (i, &ti) in t.iter().enumerate() {
        if spec.b != 0.0 {
            let d = chord(ti, 0.0);
            if d == 0.0 {
                return Ok(f64::NEG_INFINITY);
            }
            total += spec.b * d.ln();
        }
        for &tk in &t[i + 1..] {
            if tk == ti {
                return Ok(f64::NEG_INFINITY);
            }
            total += spec.beta * chord(ti, tk).ln();
        }
    }
    Ok(total)
}

/// Normalised `ln` of the generalised Dixon–Anderson density on the line.
pub fn log_density_da(params: &DAParams, lam: &[f64]) -> Result<f64> {
    check_finite(lam, "log_density_da")?;
    if !interlaces_line(params, lam)? {
        return Ok(f64::NEG_INFINITY);
    }
    let rf = params.r as f64;
    let pair = 2.0 / (rf + 1.0);
    let mut total = -params.norm_log()?;
    for (j, &lj) in lam.iter().enumerate() {
        for &lk in &lam[j + 1..] {
            total += pair * (lj - lk).ln();
        }
        for (&ap, &sp) in params.a.iter().zip(&params.s) {
            total += xlogy(sp - 1.0, (lj - ap).abs());
        }
    }
    for j in 0..params.n() {
        for k in j + 1..params.n() {
            let e = rf * (params.s[j] + params.s[k] - pair);
            total -= e * (params.a[j] - params.a[k]).ln();
        }
    }
    Ok(total)
}

/// Normalised `ln` of the circular generalised Dixon–Anderson density.
pub fn log_density_cda(params: &CircDAParams, psi: &[f64]) -> Result<f64> {
    check_finite(psi, "log_density_cda")?;
    check_len(params.dim(), psi.len())?;
    let psi: Vec<f64> = psi.iter().map(|&v| canonical_angle(v)).collect();
    if !interlaces_circle(params, &psi)? {
        return Ok(f64::NEG_INFINITY);
    }
    let rf = params.r as f64;
    let pair = 2.0 / (rf + 1.0);
    let mut total = -params.norm_log()?;
    for (j, &pj) in psi.iter().enumerate() {
        for &pk in &psi[j + 1..] {
            total += pair * chord(pj, pk).ln();
        }
        for (&tp, &ap) in params.theta.iter().zip(&params.alpha) {
            total += xlogy(ap - 1.0, chord(pj, tp));
        }
    }
    let n = params.n();
    for j in 0..n {
        for k in j + 1..n {
            let e = rf * (params.alpha[j] + params.alpha[k] - pair);
            total -= e * chord(params.theta[j], params.theta[k]).ln();
        }
    }
    Ok(total)
}

/// Which superposition of two orthogonal (β = 1) ensembles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuperpositionKind {
    /// `OE_n(f) ∪ OE_{n+1}(f)`.
    OddEvenUnequal,
    /// `OE_n(f) ∪ OE_n(f)`.
    OddEvenEqual,
}

/// Unnormalised `ln` density of a superposition of two β = 1 ensembles,
/// evaluated on the merged configuration sorted in decreasing order.
pub fn log_density_superposition(
    f_weight: &Weight,
    sizes: (usize, usize),
    x: &[f64],
    kind: SuperpositionKind,
) -> Result<f64> {
    let (n, m) = sizes;
    let ok = match kind {
        SuperpositionKind::OddEvenUnequal => m == n + 1,
        SuperpositionKind::OddEvenEqual => m == n,
    };
    if !ok {
        return Err(domain(format!("sizes ({n}, {m}) do not match superposition kind {kind:?}")));
    }
    check_len(n + m, x.len())?;
    check_finite(x, "log_density_superposition")?;
    if x.windows(2).any(|w| !(w[0] > w[1])) {
        return Ok(f64::NEG_INFINITY);
    }
    let mut total = 0.0;
    for &xi in x {
        let w = f_weight.ln_weight(xi);
        if w == f64::NEG_INFINITY {
            return Ok(w);
        }
        total += w;
    }
    // 0-based even indices are the 1-based odd positions x_1, x_3, ...
    for parity in 0..2 {
        let sub: Vec<f64> = x.iter().skip(parity).step_by(2).copied().collect();
        for (j, &xj) in sub.iter().enumerate() {
            for &xk in &sub[j + 1..] {
                total += (xj - xk).ln();
            }
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn da(r: usize, a: &[f64], s: &[f64]) -> DAParams {
        DAParams::new(r, a.to_vec(), s.to_vec()).unwrap()
    }

    fn cda(r: usize, theta: &[f64], alpha: &[f64]) -> CircDAParams {
        CircDAParams::new(r, theta.to_vec(), alpha.to_vec()).unwrap()
    }

    #[test]
    fn line_interlacing_examples() {
        assert!(interlaces_line(&da(1, &[1.0, 0.0], &[1.0, 1.0]), &[0.5]).unwrap());
        let p = da(2, &[1.0, 0.0], &[1.0, 1.0]);
        assert!(interlaces_line(&p, &[0.7, 0.3]).unwrap());
        assert!(!interlaces_line(&p, &[0.3, 0.7]).unwrap());
        let p = da(1, &[1.0, 0.5, 0.0], &[1.0, 1.0, 1.0]);
        assert!(!interlaces_line(&p, &[0.4, 0.2]).unwrap());
        assert!(interlaces_line(&p, &[0.6, 0.2]).unwrap());
        assert!(!interlaces_line(&p, &[0.5, 0.2]).unwrap(), "boundary is excluded");
        assert!(matches!(interlaces_line(&p, &[0.6]), Err(Error::Dimension { .. })));
    }

    #[test]
    fn circle_interlacing_examples() {
        assert!(interlaces_circle(&cda(1, &[TWO_PI], &[1.0]), &[PI]).unwrap());
        let p = cda(2, &[TWO_PI], &[1.0]);
        assert!(interlaces_circle(&p, &[1.0, 2.0]).unwrap());
        assert!(!interlaces_circle(&p, &[2.0, 1.0]).unwrap());
        let p = cda(1, &[PI, TWO_PI], &[1.0, 1.0]);
        assert!(!interlaces_circle(&p, &[3.5, 4.0]).unwrap());
        // 3 < π, so (3, 4) does interlace.
        assert!(interlaces_circle(&p, &[3.0, 4.0]).unwrap());
    }

    #[test]
    fn me_examples() {
        let s = EnsembleSpec::new(2.0, 2, Weight::Gaussian { c: 1.0 }).unwrap();
        assert!((log_density_me(&s, &[1.0, 0.0]).unwrap() + 1.0).abs() < 1e-15);
        assert_eq!(log_density_me(&s, &[0.3, 0.3]).unwrap(), f64::NEG_INFINITY);
        let s = EnsembleSpec::new(1.0, 1, Weight::Jacobi { a: 1.0, b: 0.0 }).unwrap();
        assert!((log_density_me(&s, &[0.5]).unwrap() - 0.5f64.ln()).abs() < 1e-15);
        assert_eq!(log_density_me(&s, &[1.5]).unwrap(), f64::NEG_INFINITY);
        assert!(log_density_me(&s, &[0.5, 0.2]).is_err());
        assert_eq!(log_density_me(&s, &[f64::NAN]), Err(Error::NotANumber("log_density_me")));
    }

    #[test]
    fn ce_examples() {
        let s = CircularSpec::new(1.7, 1, 0.0).unwrap();
        assert_eq!(log_density_ce(&s, &[1.234]).unwrap(), 0.0);
        let s = CircularSpec::new(2.0, 2, 0.0).unwrap();
        assert!((log_density_ce(&s, &[0.0, PI]).unwrap() - 4f64.ln()).abs() < 1e-14);
        assert_eq!(log_density_ce(&s, &[1.0, 1.0 + TWO_PI]).unwrap(), f64::NEG_INFINITY);
        let s = CircularSpec::new(2.0, 1, 2.0).unwrap();
        assert!((log_density_ce(&s, &[PI]).unwrap() - 4f64.ln()).abs() < 1e-14);
        assert_eq!(log_density_ce(&s, &[0.0]).unwrap(), f64::NEG_INFINITY);
    }

    #[test]
    fn da_examples() {
        let p = da(1, &[1.0, 0.0], &[1.0, 1.0]);
        assert!(log_density_da(&p, &[0.3]).unwrap().abs() < 1e-14);
        let p = da(1, &[1.0, 0.0], &[2.0, 1.0]);
        assert!(log_density_da(&p, &[0.5]).unwrap().abs() < 1e-14);
        let p = da(2, &[1.0, 0.0], &[1.0, 1.0]);
        assert_eq!(log_density_da(&p, &[0.3, 0.7]).unwrap(), f64::NEG_INFINITY);
    }

    #[test]
    fn da_r1_matches_dixon_anderson_formula() {
        let a = [2.0, 1.1, 0.4, -0.3];
        let s = [1.4, 2.2, 0.8, 1.9];
        let p = da(1, &a, &s);
        let lam = [1.6, 0.9, 0.1];
        let lg = crate::specfun::ln_gamma_pos;
        let mut want = lg(s.iter().sum()) - s.iter().map(|&v| lg(v)).sum::<f64>();
        for j in 0..3 {
            for k in j + 1..3 {
                want += f64::ln(lam[j] - lam[k]);
            }
            for pidx in 0..4 {
                want += (s[pidx] - 1.0) * f64::ln((lam[j] - a[pidx]).abs());
            }
        }
        for j in 0..4 {
            for k in j + 1..4 {
                want -= (s[j] + s[k] - 1.0) * f64::ln(a[j] - a[k]);
            }
        }
        assert!((log_density_da(&p, &lam).unwrap() - want).abs() < 1e-10);
    }

    #[test]
    fn cda_examples() {
        let p = cda(1, &[TWO_PI], &[1.0]);
        assert!((log_density_cda(&p, &[2.0]).unwrap() + TWO_PI.ln()).abs() < 1e-13);
        let p = cda(1, &[PI, TWO_PI], &[1.0, 1.0]);
        assert_eq!(log_density_cda(&p, &[4.0, 5.0]).unwrap(), f64::NEG_INFINITY);
        let p = cda(1, &[TWO_PI], &[3.0]);
        let want = 4f64.ln() - crate::specfun::circ_norm_log(1, 1, &[3.0]).unwrap();
        assert!((log_density_cda(&p, &[PI]).unwrap() - want).abs() < 1e-13);
    }

    #[test]
    fn superposition_examples() {
        let f = Weight::Jacobi { a: 0.0, b: 0.0 };
        let unequal = SuperpositionKind::OddEvenUnequal;
        let equal = SuperpositionKind::OddEvenEqual;
        assert_eq!(log_density_superposition(&f, (0, 1), &[0.5], unequal).unwrap(), 0.0);
        assert_eq!(log_density_superposition(&f, (1, 1), &[0.8, 0.2], equal).unwrap(), 0.0);
        let v = log_density_superposition(&f, (1, 2), &[0.9, 0.5, 0.1], unequal).unwrap();
        assert!((v - 0.8f64.ln()).abs() < 1e-15);
        assert!(log_density_superposition(&f, (1, 1), &[0.9, 0.5], unequal).is_err());
        let v = log_density_superposition(&f, (1, 1), &[0.2, 0.8], equal).unwrap();
        assert_eq!(v, f64::NEG_INFINITY);
    }

    #[test]
    fn spec_validation() {
        assert!(EnsembleSpec::new(0.0, 2, Weight::Gaussian { c: 1.0 }).is_err());
        assert!(EnsembleSpec::new(1.0, 0, Weight::Gaussian { c: 1.0 }).is_err());
        assert!(EnsembleSpec::new(1.0, 2, Weight::Jacobi { a: -1.0, b: 0.0 }).is_err());
        assert!(EnsembleSpec::new(1.0, 2, Weight::Laguerre { a: 0.0, c: 0.0 }).is_err());
        assert!(CircularSpec::new(1.0, 2, -0.5).is_err());
        assert!(DAParams::new(1, vec![0.0, 1.0], vec![1.0, 1.0]).is_err());
        assert!(DAParams::new(1, vec![1.0], vec![1.0]).is_err());
        assert!(CircDAParams::new(1, vec![1.0, 3.0], vec![1.0, 1.0]).is_err());
    }
}
