//! Closed-form gamma-product constants, all evaluated in the log domain.
//!
//! The Selberg and Morris integrals and every normalisation built from them
//! overflow `f64` for modest sizes, so everything here returns logarithms.
//!
//! Index conventions that differ from a literal reading of the product
//! formulas are pinned by the quadrature oracle tests in `oracle`:
//!
//! * Line normalisation: `Ĉ = Π_{l=1}^{n-1} S_r(σ_l − 1, s_{l+1} − 1, 1/(r+1)) / r!`
//!   where `σ_l = s_1 + … + s_l + (l−1)(2r/(r+1) − 1)` is the exponent carried
//!   by the endpoint obtained after merging `a_1, …, a_l`.
//! * Circle normalisation: `C̃ = Ĉ|_{s→α} · M_r(a*, 1/(r+1)) / r!` with
//!   `a* = (Σα + 2(n−1)r/(r+1) − n)/2`. The `1/r!` accounts for the ordering of
//!   the `r` angles left on the final arc.
//! * Single-gap integral: `I_r(a_1, a_2) = (a_1−a_2)^{e} S_r(s_2−1, s_1−1, 1/(r+1)) / r!`.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(domain(format!("log_gamma requires finite x > 0, got {x}")));
    }
    Ok(ln_gamma_pos(x))
}

/// Unchecked `ln Γ(x)`; the caller guarantees `x > 0`.
pub(crate) fn ln_gamma_pos(x: f64) -> f64 {
    if x < 0.5 {
        // Reflection: Γ(x)Γ(1−x) = π / sin(πx).
        return (PI / (PI * x).sin()).ln() - ln_gamma_pos(1.0 - x);
    }
    let z = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + acc.ln()
}

fn ln_factorial(n: usize) -> f64 {
    ln_gamma_pos(n as f64 + 1.0)
}

/// Arguments of the Selberg integral `S_N(λ₁, λ₂, λ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelbergArgs {
    pub n: usize,
    pub lam1: f64,
    pub lam2: f64,
    pub lam: f64,
}

impl SelbergArgs {
    pub fn new(n: usize, lam1: f64, lam2: f64, lam: f64) -> Self {
        Self { n, lam1, lam2, lam }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(domain("Selberg integral needs N >= 1"));
        }
        if !(self.lam1 > -1.0 && self.lam2 > -1.0 && self.lam >= 0.0) {
            return Err(domain(format!(
                "Selberg convergence needs lam1, lam2 > -1 and lam >= 0, got ({}, {}, {})",
                self.lam1, self.lam2, self.lam
            )));
        }
        Ok(())
    }
}

/// `ln S_N(λ₁, λ₂, λ)` via the gamma-product evaluation.
pub fn selberg_log(args: SelbergArgs) -> Result<f64> {
    args.validate()?;
    let SelbergArgs { n, lam1, lam2, lam } = args;
    let nf = n as f64;
    let mut total = 0.0;
    for j in 0..n {
        let jf = j as f64;
        total += ln_gamma_pos(lam1 + 1.0 + jf * lam) + ln_gamma_pos(lam2 + 1.0 + jf * lam)
            + ln_gamma_pos(1.0 + (jf + 1.0) * lam)
            - ln_gamma_pos(lam1 + lam2 + 2.0 + (nf + jf - 1.0) * lam)
            - ln_gamma_pos(1.0 + lam);
    }
    Ok(total)
}

/// Arguments of the Morris integral `M_N(a, λ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MorrisArgs {
    pub n: usize,
    pub a: f64,
    pub lam: f64,
}

impl MorrisArgs {
    pub fn new(n: usize, a: f64, lam: f64) -> Self {
        Self { n, a, lam }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(domain("Morris integral needs N >= 1"));
        }
        if !(2.0 * self.a + 1.0 > 0.0 && self.lam >= 0.0) {
            return Err(domain(format!(
                "Morris convergence needs 2a + 1 > 0 and lam >= 0, got a = {}, lam = {}",
                self.a, self.lam
            )));
        }
        Ok(())
    }
}

/// `ln M_N(a, λ)`; the angular integral runs over `(−π, π)^N`.
pub fn morris_log(args: MorrisArgs) -> Result<f64> {
    args.validate()?;
    let MorrisArgs { n, a, lam } = args;
    let mut total = n as f64 * (2.0 * PI).ln();
    for j in 0..n {
        let jf = j as f64;
        total += ln_gamma_pos(lam * jf + 2.0 * a + 1.0) + ln_gamma_pos(lam * (jf + 1.0) + 1.0)
            - 2.0 * ln_gamma_pos(lam * jf + a + 1.0)
            - ln_gamma_pos(1.0 + lam);
    }
    Ok(total)
}

/// Degree of homogeneity of `I_r(a_1, a_2)` in `a_1 − a_2`.
pub fn i_r_exponent(r: usize, s1: f64, s2: f64) -> f64 {
    let rf = r as f64;
    rf * (rf - 1.0) / (rf + 1.0) + rf * (s1 + s2 - 1.0)
}

/// `ln I_r(a_1, a_2)`, the ordered single-gap integral with endpoint exponents
/// `s_1 − 1` (at `a_1`) and `s_2 − 1` (at `a_2`).
pub fn i_r_closed_log(r: usize, a1: f64, a2: f64, s1: f64, s2: f64) -> Result<f64> {
    if r == 0 {
        return Err(domain("r must be a positive integer"));
    }
    if !(a1 > a2) {
        return Err(domain(format!("I_r needs a1 > a2, got a1 = {a1}, a2 = {a2}")));
    }
    if !(s1 > 0.0 && s2 > 0.0) {
        return Err(domain("I_r needs s1, s2 > 0"));
    }
    let rf = r as f64;
    let sel = selberg_log(SelbergArgs::new(r, s2 - 1.0, s1 - 1.0, 1.0 / (rf + 1.0)))?;
    Ok(i_r_exponent(r, s1, s2) * (a1 - a2).ln() + sel - ln_factorial(r))
}

/// `I_r(a_1, a_2)` in linear scale.
pub fn i_r_closed(r: usize, a1: f64, a2: f64, s1: f64, s2: f64) -> Result<f64> {
    i_r_closed_log(r, a1, a2, s1, s2).map(f64::exp)
}

/// Product of the `n − 1` merge factors shared by both normalisations.
/// Accepts `n = 1` (empty product) for use by the circular constant.
fn merge_product_log(r: usize, s: &[f64]) -> Result<f64> {
    if r == 0 {
        return Err(domain("r must be a positive integer"));
    }
    if s.iter().any(|&v| !(v > 0.0)) {
        return Err(domain("all exponents s_p must be > 0"));
    }
    let rf = r as f64;
    let pair = 1.0 / (rf + 1.0);
    let shift = 2.0 * rf / (rf + 1.0) - 1.0;
    let mut merged = s[0];
    let mut total = 0.0;
    for &next in &s[1..] {
        total += selberg_log(SelbergArgs::new(r, merged - 1.0, next - 1.0, pair))? - ln_factorial(r);
        merged += next + shift;
    }
    Ok(total)
}

/// `ln Ĉ`, the normalisation of the generalised Dixon–Anderson density on the line.
pub fn da_norm_log(r: usize, n: usize, s: &[f64]) -> Result<f64> {
    if n < 2 {
        return Err(domain("line Dixon-Anderson density needs n >= 2"));
    }
    if s.len() != n {
        return Err(Error::Dimension { expected: n, got: s.len() });
    }
    merge_product_log(r, s)
}

/// `ln C̃`, the normalisation of the circular generalised Dixon–Anderson density.
pub fn circ_norm_log(r: usize, n: usize, alpha: &[f64]) -> Result<f64> {
    if n == 0 {
        return Err(domain("circular density needs n >= 1"));
    }
    if alpha.len() != n {
        return Err(Error::Dimension { expected: n, got: alpha.len() });
    }
    let line = merge_product_log(r, alpha)?;
    let rf = r as f64;
    let nf = n as f64;
    let sum: f64 = alpha.iter().sum();
    let a_star = 0.5 * (sum + 2.0 * (nf - 1.0) * rf / (rf + 1.0) - nf);
    let morris = morris_log(MorrisArgs::new(r, a_star, 1.0 / (rf + 1.0)))?;
    Ok(line + morris - ln_factorial(r))
}

/// Arguments of the bulk gap-probability asymptotic formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticQuery {
    pub beta: f64,
    pub n: u32,
    pub t: f64,
}

/// Log-gas prediction for `ln E_β^bulk(n; 2t)` at large `t ≫ n`.
///
/// The logarithmic term carries the prefactor `n/2` and is taken to be 0 at `n = 0`.
pub fn asymptotic_log_e(q: AsymptoticQuery) -> Result<f64> {
    if !(q.t > 0.0) {
        return Err(domain(format!("asymptotic formula needs t > 0, got {}", q.t)));
    }
    let AsymptoticQuery { beta, n, t } = q;
    let nf = n as f64;
    let pt = PI * t;
    let mut value = -beta * pt * pt / 4.0 + (beta * nf + beta / 2.0 - 1.0) * pt;
    if n > 0 {
        let clog = 0.5 * nf * (1.0 - beta / 2.0 - beta * nf / 2.0);
        value += clog * ((8.0 * pt / nf).ln() + 1.0);
    }
    Ok(value)
}

/// Coefficients of `t²`, `t` and `ln t` in [`asymptotic_log_e`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticCoeffs {
    pub c2: f64,
    pub c1: f64,
    pub clog: f64,
}

impl AsymptoticCoeffs {
    /// Coefficients after substituting `t ↦ factor · t`.
    ///
    /// The `ln t` coefficient is unchanged; only the constant term absorbs `ln factor`.
    pub fn rescaled(self, factor: f64) -> Self {
        Self { c2: self.c2 * factor * factor, c1: self.c1 * factor, clog: self.clog }
    }
}

pub fn asymptotic_coeffs(beta: f64, n: u32) -> AsymptoticCoeffs {
    let nf = n as f64;
    AsymptoticCoeffs {
        c2: -beta * PI * PI / 4.0,
        c1: (beta * nf + beta / 2.0 - 1.0) * PI,
        clog: 0.5 * nf * (1.0 - beta / 2.0 - beta * nf / 2.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn log_gamma_reference_values() {
        // Reference values from a 30-digit evaluation.
        let cases = [
            (0.001, 6.907_178_885_383_853_682_5),
            (0.5, 0.572_364_942_924_700_087_07),
            (5.0, 3.178_053_830_347_945_619_6),
            (10.5, 13.940_625_219_403_763_633),
            (100.0, 359.134_205_369_575_398_78),
            (12_345.678, 103_959.919_905_546_060_92),
            (1.0e6, 12_815_504.569_147_611_66),
        ];
        for (x, want) in cases {
            let got = log_gamma(x).unwrap();
            assert!(rel(got, want) < 1e-13, "x = {x}: {got} vs {want}");
        }
        assert!(log_gamma(1.0).unwrap().abs() < 1e-15);
        assert!(log_gamma(2.0).unwrap().abs() < 1e-15);
    }

    #[test]
    fn log_gamma_rejects_bad_input() {
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-1.5).is_err());
        assert!(log_gamma(f64::NAN).is_err());
        assert!(log_gamma(f64::INFINITY).is_err());
    }

    #[test]
    fn log_gamma_recurrence() {
        for &x in &[0.01, 0.3, 0.77, 1.5, 3.25, 17.0, 250.5] {
            let lhs = log_gamma(x + 1.0).unwrap();
            let rhs = log_gamma(x).unwrap() + f64::ln(x);
            assert!((lhs - rhs).abs() < 1e-12 * lhs.abs().max(1.0), "x = {x}");
        }
    }

    #[test]
    fn selberg_small_cases() {
        assert!(selberg_log(SelbergArgs::new(1, 0.0, 0.0, 0.7)).unwrap().abs() < 1e-14);
        let v = selberg_log(SelbergArgs::new(1, 1.0, 1.0, 3.0)).unwrap();
        assert!((v - (1.0f64 / 6.0).ln()).abs() < 1e-13);
        // ∫∫|t₂ − t₁| over the unit square is 1/3.
        let v = selberg_log(SelbergArgs::new(2, 0.0, 0.0, 0.5)).unwrap();
        assert!((v - (1.0f64 / 3.0).ln()).abs() < 1e-13);
    }

    #[test]
    fn selberg_domain() {
        assert!(selberg_log(SelbergArgs::new(2, -1.0, 0.0, 0.5)).is_err());
        assert!(selberg_log(SelbergArgs::new(2, 0.0, 0.0, -0.1)).is_err());
        assert!(selberg_log(SelbergArgs::new(0, 0.0, 0.0, 0.1)).is_err());
    }

    #[test]
    fn morris_small_cases() {
        let v = morris_log(MorrisArgs::new(1, 0.0, 0.4)).unwrap();
        assert!((v - (2.0 * PI).ln()).abs() < 1e-13);
        let v = morris_log(MorrisArgs::new(1, 1.0, 0.4)).unwrap();
        assert!((v - (4.0 * PI).ln()).abs() < 1e-13);
        let v = morris_log(MorrisArgs::new(2, 0.0, 1.0 / 3.0)).unwrap();
        let want = 2.0 * (2.0 * PI).ln() + ln_gamma_pos(5.0 / 3.0) - 2.0 * ln_gamma_pos(4.0 / 3.0);
        assert!((v - want).abs() < 1e-13);
        assert!(morris_log(MorrisArgs::new(1, -0.5, 0.1)).is_err());
    }

    #[test]
    fn i_r_trivial_values() {
        assert!((i_r_closed(1, 1.0, 0.0, 1.0, 1.0).unwrap() - 1.0).abs() < 1e-14);
        assert!((i_r_closed(1, 1.0, 0.0, 2.0, 1.0).unwrap() - 0.5).abs() < 1e-14);
        assert!(i_r_closed(1, 0.0, 1.0, 1.0, 1.0).is_err());
        assert!(i_r_closed(2, 1.0, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn i_r_homogeneity() {
        for r in 1..=4 {
            let (s1, s2) = (1.3, 2.1);
            let e = i_r_exponent(r, s1, s2);
            let base = i_r_closed_log(r, 1.0, 0.0, s1, s2).unwrap();
            for (a1, a2) in [(3.0, -1.0), (0.75, 0.5), (10.0, 2.5)] {
                let v = i_r_closed_log(r, a1, a2, s1, s2).unwrap() - e * f64::ln(a1 - a2);
                assert!((v - base).abs() < 1e-12, "r = {r}");
            }
        }
    }

    #[test]
    fn da_norm_reduces_to_dixon_anderson() {
        let ln_da = |s: &[f64]| {
            s.iter().map(|&x| ln_gamma_pos(x)).sum::<f64>() - ln_gamma_pos(s.iter().sum())
        };
        for s in [vec![1.0, 1.0], vec![2.0, 1.0], vec![1.0, 1.0, 1.0], vec![0.3, 2.7, 1.1, 4.0]] {
            let got = da_norm_log(1, s.len(), &s).unwrap();
            assert!((got - ln_da(&s)).abs() < 1e-12, "s = {s:?}");
        }
        assert!((da_norm_log(1, 3, &[1.0, 1.0, 1.0]).unwrap() - 0.5f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn da_norm_symmetric_in_exponents() {
        let s = [1.2, 2.5, 1.7, 3.1];
        let base = da_norm_log(3, 4, &s).unwrap();
        for perm in [[3, 2, 1, 0], [1, 0, 3, 2], [2, 3, 0, 1]] {
            let p: Vec<f64> = perm.iter().map(|&i| s[i]).collect();
            assert!((da_norm_log(3, 4, &p).unwrap() - base).abs() < 1e-11);
        }
    }

    #[test]
    fn da_norm_errors() {
        assert_eq!(
            da_norm_log(1, 3, &[1.0, 1.0]),
            Err(Error::Dimension { expected: 3, got: 2 })
        );
        assert!(da_norm_log(1, 1, &[1.0]).is_err());
        assert!(da_norm_log(0, 2, &[1.0, 1.0]).is_err());
    }

    #[test]
    fn circ_norm_small_cases() {
        assert!((circ_norm_log(1, 1, &[1.0]).unwrap() - (2.0 * PI).ln()).abs() < 1e-13);
        let want = morris_log(MorrisArgs::new(2, 0.0, 1.0 / 3.0)).unwrap() - 2f64.ln();
        assert!((circ_norm_log(2, 1, &[1.0]).unwrap() - want).abs() < 1e-13);
        // r = 1, n = 1, α = 3: ∫|1 − e^{iψ}|² dψ = 4π.
        assert!((circ_norm_log(1, 1, &[3.0]).unwrap() - (4.0 * PI).ln()).abs() < 1e-13);
    }

    #[test]
    fn circ_norm_r1_matches_known_constant() {
        // r = 1: C̃ = 2π Γ(α₁)⋯Γ(α_n) / Γ²((Σα + 1)/2).
        for alpha in [vec![2.0, 2.0], vec![1.0, 1.5, 2.5], vec![3.0]] {
            let sum: f64 = alpha.iter().sum();
            let want = (2.0 * PI).ln() + alpha.iter().map(|&a| ln_gamma_pos(a)).sum::<f64>()
                - 2.0 * ln_gamma_pos((sum + 1.0) / 2.0);
            let got = circ_norm_log(1, alpha.len(), &alpha).unwrap();
            assert!((got - want).abs() < 1e-12, "alpha = {alpha:?}");
        }
    }

    #[test]
    fn asymptotic_values() {
        let q = |beta, n, t| asymptotic_log_e(AsymptoticQuery { beta, n, t }).unwrap();
        assert!((q(2.0, 0, 1.0) + PI * PI / 2.0).abs() < 1e-12);
        assert!((q(4.0, 0, 1.0) - (PI - PI * PI)).abs() < 1e-12);
        assert!(asymptotic_log_e(AsymptoticQuery { beta: 2.0, n: 0, t: 0.0 }).is_err());
        let c = asymptotic_coeffs(2.0, 1);
        assert!((c.c2 + PI * PI / 2.0).abs() < 1e-12);
        assert!((c.c1 - 2.0 * PI).abs() < 1e-12);
        assert!((c.clog + 0.5).abs() < 1e-12);
        let c0 = asymptotic_coeffs(2.0, 0);
        assert_eq!((c0.c1, c0.clog), (0.0, 0.0));
    }

    #[test]
    fn asymptotic_value_matches_coefficients() {
        // Value = c2 t² + c1 t + clog ln t + const, so second differences in t² isolate c2.
        let (beta, n) = (1.5, 3);
        let c = asymptotic_coeffs(beta, n);
        let f = |t: f64| asymptotic_log_e(AsymptoticQuery { beta, n, t }).unwrap();
        let k = 0.5 * (n as f64) * (1.0 - beta / 2.0 - beta * n as f64 / 2.0);
        let cst = k * ((8.0 * PI / n as f64).ln() + 1.0);
        for t in [0.5, 2.0, 7.0] {
            let pred = c.c2 * t * t + c.c1 * t + c.clog * t.ln() + cst;
            assert!((f(t) - pred).abs() < 1e-10);
        }
    }

    #[test]
    fn decimation_consistency_of_coefficients() {
        for r in 1..=3u32 {
            let rf = r as f64;
            for k in 0..=2u32 {
                let lhs = asymptotic_coeffs(2.0 / (rf + 1.0), (r + 1) * k + r).rescaled(rf + 1.0);
                let rhs = asymptotic_coeffs(2.0 * (rf + 1.0), k);
                assert!((lhs.c2 - rhs.c2).abs() < 1e-12);
                assert!((lhs.c1 - rhs.c1).abs() < 1e-12);
                assert!((lhs.clog - rhs.clog).abs() < 1e-12);
                let kk = k as f64;
                assert!((rhs.clog + kk * ((rf + 1.0) * kk + rf) / 2.0).abs() < 1e-12);
            }
        }
    }
}
