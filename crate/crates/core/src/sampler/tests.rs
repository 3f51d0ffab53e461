use std::f64::consts::PI;

use super::*;
use crate::density::CircDAParams;

fn quick(chains: usize) -> ChainConfig {
    ChainConfig::default().with_chains(chains).with_burn_in(300)
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

#[test]
fn eigenvalues_of_small_matrices() {
    let m = TridiagMatrix::new(vec![2.0, 2.0], vec![1.0]).unwrap();
    let ev = tridiag_eigenvalues(&m);
    assert!((ev[0] - 1.0).abs() < 1e-12 && (ev[1] - 3.0).abs() < 1e-12);

    // Path graph Laplacian-like matrix: eigenvalues 2 − 2cos(kπ/(n+1)).
    let n = 6;
    let m = TridiagMatrix::new(vec![2.0; n], vec![-1.0; n - 1]).unwrap();
    for (k, ev) in tridiag_eigenvalues(&m).iter().enumerate() {
        let want = 2.0 - 2.0 * ((k + 1) as f64 * PI / (n + 1) as f64).cos();
        assert!((ev - want).abs() < 1e-12);
    }
    assert!(TridiagMatrix::new(vec![], vec![]).is_err());
    assert!(TridiagMatrix::new(vec![1.0, 2.0], vec![]).is_err());
}

#[test]
fn tridiagonal_trace_moment() {
    // E tr T² = N + βN(N−1)/2.
    let (beta, n, count) = (2.0, 4, 4000);
    let batch = sample_gaussian_tridiag(beta, n, count, 7).unwrap();
    let m2: f64 = batch.rows().map(|r| r.iter().map(|x| x * x).sum::<f64>()).sum::<f64>() / count as f64;
    let want = n as f64 + beta * (n * (n - 1)) as f64 / 2.0;
    assert!((m2 - want).abs() < 0.05 * want, "{m2} vs {want}");
}

#[test]
fn metropolis_matches_tridiagonal_second_moment() {
    let spec = EnsembleSpec::new(2.0, 3, Weight::Gaussian { c: 1.0 }).unwrap();
    let batch = sample_me(&spec, &quick(3000), 11).unwrap();
    let m2: f64 = batch.rows().map(|r| r.iter().map(|x| x * x).sum::<f64>()).sum::<f64>() / batch.len() as f64;
    // Rescaled from weight e^{−x²/2}: (N + βN(N−1)/2)/2.
    let want = (3.0 + 6.0) / 2.0;
    assert!((m2 - want).abs() < 0.06 * want, "{m2} vs {want}");
    assert!(batch.rows().all(|r| r.windows(2).all(|w| w[0] > w[1])));
}

#[test]
fn jacobi_single_point_is_beta_distributed() {
    let spec = EnsembleSpec::new(1.0, 1, Weight::Jacobi { a: 1.0, b: 0.0 }).unwrap();
    let batch = sample_me(&spec, &quick(4000), 3).unwrap();
    // Beta(2, 1) has mean 2/3.
    assert!((mean(&batch.column(0)) - 2.0 / 3.0).abs() < 0.02);
}

#[test]
fn circular_pair_chord_moment() {
    // For CE_{2,2}, E|e^{iθ1} − e^{iθ2}|² = 3.
    let spec = CircularSpec::new(2.0, 2, 0.0).unwrap();
    let batch = sample_ce(&spec, &quick(4000), 5).unwrap();
    let m: f64 = mean(&batch.rows().map(|r| crate::density::chord(r[0], r[1]).powi(2)).collect::<Vec<_>>());
    assert!((m - 3.0).abs() < 0.1, "{m}");
    assert!(batch.rows().all(|r| r[0] < r[1] && r[0] >= 0.0 && r[1] < 2.0 * PI));
}

#[test]
fn dixon_anderson_single_gap() {
    // r = 1, a = (1, 0), s = (2, 1): density ∝ (1 − λ), mean 1/3.
    let p = DAParams::new(1, vec![1.0, 0.0], vec![2.0, 1.0]).unwrap();
    let batch = sample_da(&p, &quick(4000), 9).unwrap();
    assert!((mean(&batch.column(0)) - 1.0 / 3.0).abs() < 0.02);
}

#[test]
fn unbounded_top_gap_is_exponential() {
    // r = 1, one free point above 0 with density e^{−λ}.
    let t = LineDaTarget::unbounded_top(1, &[0.0], &[1.0], 1.0);
    let batch = sample_target(&t, &quick(4000), 13, "exp".into()).unwrap();
    assert!((mean(&batch.column(0)) - 1.0).abs() < 0.05);
}

#[test]
fn circular_da_stays_in_arcs() {
    let p = CircDAParams::new(2, vec![2.0, 2.0 * PI], vec![1.0, 1.5]).unwrap();
    let batch = sample_cda(&p, &quick(200), 1).unwrap();
    for row in batch.rows() {
        assert!(crate::density::interlaces_circle(&p, row).unwrap());
    }
}

#[test]
fn batches_are_reproducible() {
    let spec = EnsembleSpec::new(0.5, 4, Weight::Laguerre { a: 0.5, c: 1.0 }).unwrap();
    let a = sample_me(&spec, &quick(50), 42).unwrap();
    let b = sample_me(&spec, &quick(50), 42).unwrap();
    let c = sample_me(&spec, &quick(50), 43).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn registry_selects_by_name() {
    let reg = SamplerRegistry::builtin();
    assert_eq!(reg.names(), vec!["metropolis", "tridiagonal"]);
    let gauss = Ensemble::Line(EnsembleSpec::new(2.0, 3, Weight::Gaussian { c: 0.5 }).unwrap());
    let jac = Ensemble::Line(EnsembleSpec::new(2.0, 3, Weight::Jacobi { a: 0.0, b: 0.0 }).unwrap());
    let tri = reg.get("tridiagonal").unwrap();
    assert!(tri.supports(&gauss) && !tri.supports(&jac));
    assert!(tri.sample(&jac, &quick(5), 0).is_err());
    assert_eq!(tri.sample(&gauss, &quick(5), 0).unwrap().len(), 5);
    assert!(matches!(reg.get("gibbs"), Err(Error::Unknown { .. })));
}

#[test]
fn config_validation() {
    assert!(ChainConfig::default().with_chains(0).validate().is_err());
    assert!(ChainConfig::default().with_burn_in(0).validate().is_err());
    let fixed = ChainConfig { step_scale: StepScale::Fixed(-1.0), ..ChainConfig::default() };
    assert!(fixed.validate().is_err());
}
