//! The full verification suite, one function per check.
//!
//! Each check returns a [`CheckOutcome`] with a one-line summary. The
//! randomized checks run with fixed seeds derived from [`SuiteConfig::seed`],
//! and can write their report CSVs (and the compared samples) to a directory.

use std::f64::consts::PI;
use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use rand::Rng;

use crate::density::{CircDAParams, DAParams};
use crate::error::Result;
use crate::oracle::{circle_ratio, morris_quadrature, selberg_quadrature, interlaced_ratio, QuadSpec};
use crate::phasecomb::{f_poly_coeffs, phase_sum};
use crate::report::{estimate_csv_string, report_csv_string, write_samples_csv};
use crate::sampler::{mix64, stream_rng};
use crate::specfun::{
    asymptotic_coeffs, circ_norm_log, da_norm_log, morris_log, selberg_log, MorrisArgs, SelbergArgs,
};
use crate::stats::{
    gap_prob_closed_form, verify_composition, verify_decimation_relation, verify_gap_formula, verify_spacing,
    verify_superposition, verify_tridiagonal, NegativeControl, RelationRegistry, SuperpositionCase,
    VerificationReport, VerifyOptions,
};

/// Shared settings of a suite run.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Samples per side for the Monte Carlo checks.
    pub samples: usize,
    /// Samples for the gap-probability check.
    pub gap_samples: usize,
    pub burn_in: usize,
    pub threshold: f64,
    pub out_dir: Option<PathBuf>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { seed: 20_240_601, samples: 20_000, gap_samples: 100_000, burn_in: 1000, threshold: 1e-3, out_dir: None }
    }
}

impl SuiteConfig {
    fn options(&self) -> VerifyOptions {
        VerifyOptions { burn_in: self.burn_in, threshold: self.threshold, ..VerifyOptions::default() }
    }

    fn seed_for(&self, check: u64, case: u64) -> u64 {
        mix64(self.seed, check * 10_000 + case)
    }

    fn save(&self, stem: &str, report: &VerificationReport) -> Result<()> {
        if let Some(dir) = &self.out_dir {
            fs::create_dir_all(dir)?;
            fs::write(dir.join(format!("{stem}.csv")), report_csv_string(report))?;
            if let Some(est) = estimate_csv_string(report) {
                fs::write(dir.join(format!("{stem}_estimate.csv")), est)?;
            }
        }
        Ok(())
    }
}

/// Result of one check.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub reports: Vec<VerificationReport>,
    /// Names of the failing sub-cases.
    pub failures: Vec<String>,
}

impl CheckOutcome {
    fn new(id: u8, name: &'static str) -> Self {
        Self { id, name, pass: true, detail: String::new(), reports: Vec::new(), failures: Vec::new() }
    }

    fn fail(&mut self, what: impl Into<String>) {
        self.pass = false;
        self.failures.push(what.into());
    }

    fn add_report(&mut self, report: VerificationReport) {
        if !report.pass {
            self.fail(format!("{} r={} N={}", report.relation, report.r, report.n));
        }
        self.reports.push(report);
    }

    fn finish(mut self, detail: String) -> Self {
        self.detail = detail;
        if !self.failures.is_empty() {
            self.detail.push_str(&format!("; failing: {}", self.failures.join(", ")));
        }
        self
    }

    /// `check N (name): PASS|FAIL detail`.
    pub fn line(&self) -> String {
        format!("check {:>2} ({}): {} {}", self.id, self.name, if self.pass { "PASS" } else { "FAIL" }, self.detail)
    }
}

fn rel_err(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// Roots-of-unity cancellation for `1 ≤ q ≤ r ≤ r_max`.
pub fn check_phase_sums(r_max: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new(1, "phase sums");
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for r in 1..=r_max {
        for q in 1..=r {
            let s = phase_sum(r, q).map(|c| c.norm()).unwrap_or(f64::INFINITY);
            let c = f_poly_coeffs(r, q)[q].norm();
            worst = worst.max(s).max(c);
            if !(s < 1e-10 && c < 1e-10) {
                out.fail(format!("r={r} q={q}"));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 1.0 {
        out.fail(format!("runtime {secs:.2}s"));
    }
    out.finish(format!("max modulus {worst:.2e} over 1<=q<=r<={r_max} in {secs:.3}s"))
}

/// Parameter triples `(λ₁, λ₂, λ)` for the Selberg check.
pub const SELBERG_GRID: [(f64, f64, f64); 9] = [
    (0.0, 0.0, 0.5),
    (1.0, 0.5, 1.0 / 3.0),
    (-0.5, 0.3, 1.0),
    (2.0, 1.0, 0.25),
    (0.5, -0.5, 2.0 / 3.0),
    (1.5, 1.5, 1.5),
    (0.2, 2.5, 0.0),
    (-0.3, -0.3, 0.5),
    (3.0, 0.0, 2.0),
];

/// Parameter pairs `(a, λ)` for the Morris check.
pub const MORRIS_GRID: [(f64, f64); 9] = [
    (0.0, 1.0 / 3.0),
    (0.5, 1.0 / 3.0),
    (1.0, 0.5),
    (-0.25, 1.0),
    (2.0, 0.25),
    (0.3, 1.5),
    (0.0, 1.0),
    (1.5, 2.0 / 3.0),
    (-0.4, 0.5),
];

fn selberg_worst(out: &mut CheckOutcome) -> f64 {
    let mut worst: f64 = 0.0;
    for n in 1..=3 {
        for &(l1, l2, l) in &SELBERG_GRID {
            let args = SelbergArgs::new(n, l1, l2, l);
            let e = match (selberg_log(args), selberg_quadrature(args, 64)) {
                (Ok(c), Ok(q)) => rel_err(q.value, c.exp()),
                _ => f64::INFINITY,
            };
            worst = worst.max(e);
            if !(e < 1e-6) {
                out.fail(format!("S_{n}({l1},{l2},{l})"));
            }
        }
    }
    worst
}

fn morris_worst(out: &mut CheckOutcome) -> f64 {
    let mut worst: f64 = 0.0;
    for n in 1..=2 {
        for &(a, l) in &MORRIS_GRID {
            let args = MorrisArgs::new(n, a, l);
            let e = match (morris_log(args), morris_quadrature(args, 128)) {
                (Ok(c), Ok(q)) => rel_err(q.value, c.exp()),
                _ => f64::INFINITY,
            };
            worst = worst.max(e);
            if !(e < 1e-5) {
                out.fail(format!("M_{n}({a},{l})"));
            }
        }
    }
    worst
}

/// Gamma-product Selberg values against nested quadrature.
pub fn check_selberg() -> CheckOutcome {
    let mut out = CheckOutcome::new(2, "Selberg closed form");
    let worst = selberg_worst(&mut out);
    out.finish(format!("max rel err {worst:.1e}"))
}

/// Gamma-product Morris values against nested quadrature.
pub fn check_morris() -> CheckOutcome {
    let mut out = CheckOutcome::new(2, "Morris closed form");
    let worst = morris_worst(&mut out);
    out.finish(format!("max rel err {worst:.1e}"))
}

/// Both closed forms, with the time budget.
pub fn check_selberg_morris() -> CheckOutcome {
    let mut out = CheckOutcome::new(2, "Selberg/Morris closed forms");
    let start = Instant::now();
    let worst_s = selberg_worst(&mut out);
    let worst_m = morris_worst(&mut out);
    let secs = start.elapsed().as_secs_f64();
    if secs >= 30.0 {
        out.fail(format!("runtime {secs:.1}s"));
    }
    out.finish(format!("max rel err Selberg {worst_s:.1e}, Morris {worst_m:.1e} in {secs:.1}s"))
}

fn decreasing_endpoints(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    // Random gaps in [0.2, 1.2] below a random top point.
    let mut a = vec![rng.random_range(-1.0..2.0)];
    for _ in 1..n {
        let last = *a.last().unwrap();
        a.push(last - rng.random_range(0.2..1.2));
    }
    a
}

/// `L / R` is the same for several endpoint sets and equals the closed-form constant.
pub fn check_interlaced_line(seed: u64) -> CheckOutcome {
    let mut out = CheckOutcome::new(3, "interlaced integral on the line");
    let start = Instant::now();
    let quad = QuadSpec::default();
    let (mut spread, mut vs_closed): (f64, f64) = (0.0, 0.0);
    for (case, &(r, n)) in [(1usize, 2usize), (1, 3), (2, 2), (3, 2)].iter().enumerate() {
        for draw in 0..3u64 {
            let mut rng = stream_rng(seed, case as u64 * 100 + draw);
            let s: Vec<f64> = (0..n).map(|_| rng.random_range(1.0..3.0)).collect();
            let ratios: Vec<f64> = (0..3)
                .map(|_| {
                    let a = decreasing_endpoints(&mut rng, n);
                    DAParams::new(r, a, s.clone())
                        .and_then(|p| interlaced_ratio(&p, &quad))
                        .map_or(f64::NAN, |q| q.value)
                })
                .collect();
            let closed = da_norm_log(r, n, &s).map_or(f64::NAN, f64::exp);
            let sp = ratios.iter().map(|v| rel_err(*v, ratios[0])).fold(0.0, f64::max);
            let vc = ratios.iter().map(|v| rel_err(*v, closed)).fold(0.0, f64::max);
            spread = spread.max(sp);
            vs_closed = vs_closed.max(vc);
            if !(sp < 1e-4 && vc < 1e-4) {
                out.fail(format!("r={r} n={n} s={s:?}"));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 120.0 {
        out.fail(format!("runtime {secs:.1}s"));
    }
    out.finish(format!("max spread {spread:.1e}, max deviation from closed form {vs_closed:.1e} in {secs:.1}s"))
}

/// `Q / S` is the same for several angle sets and equals the closed-form constant.
pub fn check_interlaced_circle(seed: u64) -> CheckOutcome {
    let mut out = CheckOutcome::new(4, "interlaced integral on the circle");
    let start = Instant::now();
    let quad = QuadSpec::default();
    let (mut spread, mut vs_closed): (f64, f64) = (0.0, 0.0);
    for (case, &(r, n)) in [(1usize, 2usize), (2, 1)].iter().enumerate() {
        for draw in 0..3u64 {
            let mut rng = stream_rng(seed, case as u64 * 100 + draw);
            let alpha: Vec<f64> = (0..n).map(|_| rng.random_range(1.0..2.5)).collect();
            let thetas: Vec<Vec<f64>> = if n == 1 {
                vec![vec![2.0 * PI]]
            } else {
                [PI / 2.0, PI, 4.5].iter().map(|&t| vec![t, 2.0 * PI]).collect()
            };
            let ratios: Vec<f64> = thetas
                .into_iter()
                .map(|theta| {
                    CircDAParams::new(r, theta, alpha.clone())
                        .and_then(|p| circle_ratio(&p, &quad))
                        .map_or(f64::NAN, |q| q.value)
                })
                .collect();
            let closed = circ_norm_log(r, n, &alpha).map_or(f64::NAN, f64::exp);
            let sp = ratios.iter().map(|v| rel_err(*v, ratios[0])).fold(0.0, f64::max);
            let vc = ratios.iter().map(|v| rel_err(*v, closed)).fold(0.0, f64::max);
            spread = spread.max(sp);
            vs_closed = vs_closed.max(vc);
            if !(sp < 1e-3 && vc < 1e-3) {
                out.fail(format!("r={r} n={n} alpha={alpha:?}"));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 120.0 {
        out.fail(format!("runtime {secs:.1}s"));
    }
    out.finish(format!("max spread {spread:.1e}, max deviation from closed form {vs_closed:.1e} in {secs:.1}s"))
}

/// All seven relations for `r ∈ {1,2}`, `N ∈ {2,3}`, plus both negative controls.
pub fn check_decimation(cfg: &SuiteConfig) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new(5, "decimation relations");
    let start = Instant::now();
    let registry = RelationRegistry::builtin();
    let opts = cfg.options();
    let mut min_p: f64 = 1.0;
    let mut controls_detected = 0;
    let mut controls = 0;
    for rel in registry.all() {
        for r in 1..=2 {
            for n in 2..=3 {
                let seed = cfg.seed_for(5, rel.id() as u64 * 100 + r as u64 * 10 + n as u64);
                let outcome = verify_decimation_relation(rel.as_ref(), r, n, cfg.samples, seed, &opts)?;
                let stem = format!("decimation_{}_r{r}_N{n}", rel.name());
                cfg.save(&stem, &outcome.report)?;
                if let Some(dir) = &cfg.out_dir {
                    write_samples_csv(&outcome.lhs, &dir.join(format!("{stem}_lhs.csv")))?;
                    write_samples_csv(&outcome.rhs, &dir.join(format!("{stem}_rhs.csv")))?;
                }
                min_p = min_p.min(outcome.report.min_p_value());
                out.add_report(outcome.report);
            }
        }
        for control in [NegativeControl::WrongStride, NegativeControl::WrongBeta] {
            let seed = cfg.seed_for(5, 9000 + rel.id() as u64 * 10 + control as u64);
            let bad = VerifyOptions { negative_control: Some(control), ..opts.clone() };
            let report = verify_decimation_relation(rel.as_ref(), 1, 2, cfg.samples, seed, &bad)?.report;
            cfg.save(&format!("control_{}_{}", rel.name(), if control == NegativeControl::WrongStride { "stride" } else { "beta" }), &report)?;
            controls += 1;
            if report.min_p_value() < 1e-3 {
                controls_detected += 1;
            } else {
                out.fail(format!("{} not detected (min p {:.3})", report.relation, report.min_p_value()));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Ok(out.finish(format!(
        "{} relation runs, min p {min_p:.4}; negative controls detected {controls_detected}/{controls} in {secs:.0}s",
        registry.all().len() * 4
    )))
}

/// Forward Dixon–Anderson construction for the Jacobi and Laguerre relations.
pub fn check_composition(cfg: &SuiteConfig) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new(6, "forward composition");
    let start = Instant::now();
    let registry = RelationRegistry::builtin();
    let mut min_p: f64 = 1.0;
    for name in ["jacobi", "jacobi-b", "laguerre-a", "laguerre"] {
        let rel = registry.get(name)?;
        for r in 1..=2 {
            let seed = cfg.seed_for(6, rel.id() as u64 * 10 + r as u64);
            let report = verify_composition(rel.as_ref(), r, 2, cfg.samples, seed, &cfg.options())?;
            cfg.save(&format!("composition_{name}_r{r}_N2"), &report)?;
            min_p = min_p.min(report.min_p_value());
            out.add_report(report);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Ok(out.finish(format!("8 runs, min p {min_p:.4} in {secs:.0}s")))
}

/// The four `β = 1` superposition identities at `N = 2`.
pub fn check_superposition(cfg: &SuiteConfig) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new(7, "superposition identities");
    let start = Instant::now();
    let mut min_p: f64 = 1.0;
    for (i, name) in SuperpositionCase::NAMES.iter().enumerate() {
        let case: SuperpositionCase = name.parse()?;
        let report = verify_superposition(case, 2, cfg.samples, cfg.seed_for(7, i as u64), &cfg.options())?;
        cfg.save(&format!("superposition_{name}_N2"), &report)?;
        min_p = min_p.min(report.min_p_value());
        out.add_report(report);
    }
    let secs = start.elapsed().as_secs_f64();
    Ok(out.finish(format!("4 runs, min p {min_p:.4} in {secs:.0}s")))
}

/// Exact tridiagonal model against Metropolis for `β ∈ {2/3, 1, 2, 4}`, `N = 3`.
pub fn check_tridiagonal(cfg: &SuiteConfig) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new(8, "tridiagonal model");
    let start = Instant::now();
    let opts = VerifyOptions { threshold: 0.005, ..cfg.options() };
    let mut min_p: f64 = 1.0;
    let mut worst_se: f64 = 0.0;
    for (i, beta) in [2.0 / 3.0, 1.0, 2.0, 4.0].into_iter().enumerate() {
        let report = verify_tridiagonal(beta, 3, cfg.samples, cfg.seed_for(8, i as u64), &opts)?;
        cfg.save(&format!("tridiagonal_{i}_N3"), &report)?;
        min_p = min_p.min(report.min_p_value());
        if let Some(p) = report.probability {
            worst_se = worst_se.max((p.estimate - p.closed_form).abs() / p.std_error);
        }
        out.add_report(report);
    }
    let secs = start.elapsed().as_secs_f64();
    Ok(out.finish(format!("min p {min_p:.4}, worst moment deviation {worst_se:.2} SE in {secs:.0}s")))
}

/// Interior cut points and weight exponents of the gap-probability check.
pub fn gap_cases() -> Vec<(f64, f64, Vec<f64>)> {
    vec![(0.0, 0.0, vec![0.5]), (0.0, 0.0, vec![0.9, 0.1]), (1.0, 1.0, vec![0.5])]
}

/// Monte Carlo "one eigenvalue per interval" frequencies against the closed form.
pub fn check_gap(cfg: &SuiteConfig) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new(9, "gap probability");
    let start = Instant::now();
    let mut parts = Vec::new();
    for (i, (a, b, interior)) in gap_cases().into_iter().enumerate() {
        let report = verify_gap_formula(a, b, &interior, cfg.gap_samples, cfg.seed_for(9, i as u64), &cfg.options())?;
        cfg.save(&format!("gap_{i}"), &report)?;
        if let Some(p) = report.probability {
            parts.push(format!("{:.4}±{:.4} vs {:.4}", p.estimate, p.std_error, p.closed_form));
        }
        out.add_report(report);
    }
    let exact = gap_prob_closed_form(0.0, 0.0, &[0.5])?;
    if (exact - 0.75).abs() > 1e-12 {
        out.fail(format!("closed form at a=b=0, cut 1/2 is {exact}, not 3/4"));
    }
    if let Some(p) = out.reports.first().and_then(|r| r.probability) {
        if (p.estimate - 0.75).abs() > 3.0 * p.std_error {
            out.fail("3/4 not reproduced");
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Ok(out.finish(format!("{} in {secs:.0}s", parts.join("; "))))
}

/// Circular spacing identity for `r = 1`, `N = 4`, `k' = 0`.
pub fn check_spacing(cfg: &SuiteConfig) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new(10, "spacing relation");
    let start = Instant::now();
    let report = verify_spacing(1, 4, 0, cfg.samples, cfg.seed_for(10, 0), &cfg.options())?;
    cfg.save("spacing_r1_N4_k0", &report)?;
    let p = report.min_p_value();
    out.add_report(report);
    let secs = start.elapsed().as_secs_f64();
    Ok(out.finish(format!("p {p:.4} in {secs:.0}s")))
}

/// Asymptotic coefficients agree under `β = 2/(r+1)`, `n = (r+1)k + r`, `t ↦ (r+1)t`
/// against `β = 2(r+1)`, `n = k`.
pub fn check_asymptotic() -> CheckOutcome {
    let mut out = CheckOutcome::new(11, "asymptotic consistency");
    let mut worst: f64 = 0.0;
    for r in 1..=3u32 {
        for k in 0..=2u32 {
            let rf = r as f64 + 1.0;
            let small = asymptotic_coeffs(2.0 / rf, (r + 1) * k + r).rescaled(rf);
            let large = asymptotic_coeffs(2.0 * rf, k);
            let d = (small.c2 - large.c2).abs().max((small.c1 - large.c1).abs()).max((small.clog - large.clog).abs());
            worst = worst.max(d);
            if !(d < 1e-12) {
                out.fail(format!("r={r} k={k}"));
            }
        }
    }
    out.finish(format!("max coefficient difference {worst:.1e}"))
}

/// Re-runs one instance of every randomized verifier twice with the same seed
/// and compares the report CSVs byte for byte.
pub fn check_determinism(cfg: &SuiteConfig) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new(12, "determinism");
    let start = Instant::now();
    let opts = cfg.options();
    let registry = RelationRegistry::builtin();
    let m = cfg.samples;
    let lag = registry.get("laguerre")?;
    type Run<'a> = Box<dyn Fn() -> Result<String> + 'a>;
    let mut runs: Vec<(String, Run)> = Vec::new();
    for rel in registry.all() {
        let opts = opts.clone();
        let seed = cfg.seed_for(12, rel.id() as u64);
        runs.push((
            format!("decimation {}", rel.name()),
            Box::new(move || Ok(report_csv_string(&verify_decimation_relation(rel.as_ref(), 1, 2, m, seed, &opts)?.report))),
        ));
    }
    runs.push((
        "composition".into(),
        Box::new(|| Ok(report_csv_string(&verify_composition(lag.as_ref(), 1, 2, m, cfg.seed_for(12, 20), &opts)?))),
    ));
    runs.push((
        "superposition".into(),
        Box::new(|| {
            Ok(report_csv_string(&verify_superposition(SuperpositionCase::Gaussian, 2, m, cfg.seed_for(12, 21), &opts)?))
        }),
    ));
    runs.push((
        "spacing".into(),
        Box::new(|| Ok(report_csv_string(&verify_spacing(1, 4, 0, m, cfg.seed_for(12, 22), &opts)?))),
    ));
    runs.push((
        "tridiagonal".into(),
        Box::new(|| {
            let rep = verify_tridiagonal(2.0, 3, m, cfg.seed_for(12, 23), &opts)?;
            Ok(report_csv_string(&rep) + &estimate_csv_string(&rep).unwrap_or_default())
        }),
    ));
    runs.push((
        "gap".into(),
        Box::new(|| {
            let rep = verify_gap_formula(0.0, 0.0, &[0.5], m, cfg.seed_for(12, 24), &opts)?;
            Ok(report_csv_string(&rep) + &estimate_csv_string(&rep).unwrap_or_default())
        }),
    ));
    let total = runs.len();
    for (name, run) in &runs {
        let first = run()?;
        let second = run()?;
        if first != second {
            out.fail(name.clone());
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Ok(out.finish(format!("{total} verifier kinds re-run with identical CSV output in {secs:.0}s")))
}

/// Runs every check in order.
pub fn run_all(cfg: &SuiteConfig) -> Result<Vec<CheckOutcome>> {
    Ok(vec![
        check_phase_sums(8),
        check_selberg_morris(),
        check_interlaced_line(cfg.seed_for(3, 0)),
        check_interlaced_circle(cfg.seed_for(4, 0)),
        check_decimation(cfg)?,
        check_composition(cfg)?,
        check_superposition(cfg)?,
        check_tridiagonal(cfg)?,
        check_gap(cfg)?,
        check_spacing(cfg)?,
        check_asymptotic(),
        check_determinism(cfg)?,
    ])
}
