//! CSV and key=value serialisation of samples and verification reports.
//!
//! Floats are written with Rust's shortest round-trip formatting, so reading
//! a file back reproduces every value bit for bit, and identical runs give
//! byte-identical files. Wall-clock time is never written.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::sampler::{ChainConfig, SampleBatch};
use crate::stats::VerificationReport;

pub const REPORT_HEADER: &str = "relation,r,N,position,ks_D,p_value,n1,n2,pass";
pub const ESTIMATE_HEADER: &str = "relation,r,N,estimate,std_error,closed_form,samples,pass";

/// Path of the metadata sidecar written next to a samples CSV.
pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".meta");
    PathBuf::from(s)
}

pub fn samples_csv_string(batch: &SampleBatch) -> String {
    let mut out = String::new();
    let header: Vec<String> = (1..=batch.dim()).map(|j| format!("x{j}")).collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in batch.rows().take(batch.len()) {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn sidecar_string(batch: &SampleBatch) -> String {
    let c = &batch.config;
    format!(
        "master_seed={}\nspec={}\ndim={}\nrows={}\nburn_in_sweeps={}\nchains={}\nstep_scale={}\ntarget_accept={}\n",
        batch.master_seed,
        batch.spec_fingerprint,
        batch.dim(),
        batch.len(),
        c.burn_in_sweeps,
        c.chains,
        c.step_scale,
        c.target_accept
    )
}

/// Writes `path` and its `.meta` sidecar.
pub fn write_samples_csv(batch: &SampleBatch, path: &Path) -> Result<()> {
    fs::write(path, samples_csv_string(batch))?;
    fs::write(sidecar_path(path), sidecar_string(batch))?;
    Ok(())
}

/// Parses a `key=value` file, skipping blank lines and `#` comments.
pub fn parse_key_values(text: &str) -> Result<Vec<(String, String)>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| {
            let (k, v) = l.split_once('=').ok_or_else(|| Error::Parse(format!("expected key = value, got `{l}`")))?;
            Ok((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

/// Reads a samples CSV and its sidecar back into a batch.
pub fn read_samples_csv(path: &Path) -> Result<SampleBatch> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Parse("empty samples file".into()))?;
    let dim = if header.is_empty() { 0 } else { header.split(',').count() };
    let rows = lines
        .map(|l| {
            l.split(',')
                .map(|c| c.parse::<f64>().map_err(|e| Error::Parse(format!("bad value `{c}`: {e}"))))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let meta = parse_key_values(&fs::read_to_string(sidecar_path(path))?)?;
    let get = |k: &str| meta.iter().find(|(key, _)| key == k).map(|(_, v)| v.clone());
    let parse_num = |k: &str| -> Result<Option<f64>> {
        get(k).map(|v| v.parse::<f64>().map_err(|e| Error::Parse(format!("{k}: {e}")))).transpose()
    };
    let master_seed = get("master_seed")
        .ok_or_else(|| Error::Parse("sidecar lacks master_seed".into()))?
        .parse::<u64>()
        .map_err(|e| Error::Parse(format!("master_seed: {e}")))?;
    let defaults = ChainConfig::default();
    let config = ChainConfig {
        burn_in_sweeps: parse_num("burn_in_sweeps")?.map_or(defaults.burn_in_sweeps, |v| v as usize),
        chains: parse_num("chains")?.map_or(rows.len(), |v| v as usize),
        target_accept: parse_num("target_accept")?.unwrap_or(defaults.target_accept),
        step_scale: match get("step_scale").as_deref() {
            None | Some("adaptive") => crate::sampler::StepScale::Adaptive,
            Some(v) => crate::sampler::StepScale::Fixed(v.parse().map_err(|e| Error::Parse(format!("step_scale: {e}")))?),
        },
    };
    SampleBatch::from_rows(rows, dim, get("spec").unwrap_or_default(), master_seed, config)
}

pub fn report_csv_string(report: &VerificationReport) -> String {
    let mut out = String::from(REPORT_HEADER);
    out.push('\n');
    for t in &report.tests {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            report.relation,
            report.r,
            report.n,
            t.position,
            t.ks.d,
            t.ks.p_value,
            t.ks.n1,
            t.ks.n2,
            t.ks.p_value > report.threshold
        );
    }
    let min_p = if report.tests.is_empty() { String::new() } else { report.min_p_value().to_string() };
    let _ = writeln!(out, "{},{},{},summary,,{},,,{}", report.relation, report.r, report.n, min_p, report.pass);
    out
}

pub fn write_report_csv(report: &VerificationReport, path: &Path) -> Result<()> {
    fs::write(path, report_csv_string(report))?;
    Ok(())
}

/// Monte Carlo estimate against its exact value, when the report has one.
pub fn estimate_csv_string(report: &VerificationReport) -> Option<String> {
    let p = report.probability?;
    Some(format!(
        "{ESTIMATE_HEADER}\n{},{},{},{},{},{},{},{}\n",
        report.relation,
        report.r,
        report.n,
        p.estimate,
        p.std_error,
        p.closed_form,
        p.samples,
        p.within(3.0)
    ))
}

pub fn write_estimate_csv(report: &VerificationReport, path: &Path) -> Result<()> {
    let text = estimate_csv_string(report).ok_or_else(|| Error::Parse("report has no estimate".into()))?;
    fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::{ks_two_sample, PositionTest};

    fn batch() -> SampleBatch {
        SampleBatch::from_rows(
            vec![vec![0.1, -1.0 / 3.0], vec![std::f64::consts::PI, 1e-300]],
            2,
            "test".into(),
            99,
            ChainConfig::default().with_chains(2),
        )
        .unwrap()
    }

    #[test]
    fn samples_round_trip_bitwise() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.csv");
        let b = batch();
        write_samples_csv(&b, &path).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 3);
        assert!(text.starts_with("x1,x2\n"));
        let back = read_samples_csv(&path).unwrap();
        assert_eq!(back, b);
        assert!(fs::read_to_string(sidecar_path(&path)).unwrap().contains("master_seed=99"));
    }

    #[test]
    fn report_rows_and_summary() {
        let ks = ks_two_sample(&[1.0, 2.0], &[1.5, 2.5]).unwrap();
        let tests = vec![PositionTest { position: 1, ks }, PositionTest { position: 2, ks }];
        let rep = VerificationReport::from_tests("jacobi".into(), 1, 2, tests, 1e-3, 5);
        let csv = report_csv_string(&rep);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], REPORT_HEADER);
        for l in &lines[1..] {
            assert_eq!(l.split(',').count(), 9);
            let pass = l.rsplit(',').next().unwrap();
            assert!(pass == "true" || pass == "false");
            assert!(!l.contains('"'));
        }
        assert!(lines[3].starts_with("jacobi,1,2,summary,"));
        assert!(estimate_csv_string(&rep).is_none());
    }

    #[test]
    fn key_values_skip_comments() {
        let kv = parse_key_values("# header\nseed = 4 # trailing\n\nM=100\n").unwrap();
        assert_eq!(kv, vec![("seed".into(), "4".into()), ("M".into(), "100".into())]);
        assert!(parse_key_values("novalue").is_err());
    }
}
