use std::fs;
use std::process::Command;

fn betadec() -> Command {
    Command::new(env!("CARGO_BIN_EXE_betadec"))
}

#[test]
fn phase_sum_command_passes() {
    let out = betadec().args(["verify", "lemma", "--r-max", "8"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let out = betadec().arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = betadec().args(["verify", "decimation", "--relation", "gaussian", "--r", "x"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn decimation_reports_are_reproducible() {
    let run = |dir: &std::path::Path| {
        let out = betadec()
            .args(["verify", "decimation", "--relation", "gaussian", "--r", "1", "--N", "2"])
            .args(["--M", "20000", "--seed", "42", "--out-dir"])
            .arg(dir)
            .env("BETADEC_THREADS", "2")
            .output()
            .unwrap();
        assert!(matches!(out.status.code(), Some(0 | 1)));
    };
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    run(a.path());
    run(b.path());
    let mut names: Vec<_> = fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names.len(), 5, "report, two sample files and their sidecars: {names:?}");
    for name in names {
        assert_eq!(fs::read(a.path().join(&name)).unwrap(), fs::read(b.path().join(&name)).unwrap(), "{name:?}");
    }
    let report = fs::read_to_string(a.path().join("decimation_gaussian_r1_N2.csv")).unwrap();
    assert_eq!(report.lines().count(), 4);
}

#[test]
fn sample_writes_csv_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ce.csv");
    let out = betadec()
        .args(["sample", "--ensemble", "circular", "--beta", "2", "--N", "3", "--M", "100", "--seed", "5", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 101);
    assert!(text.starts_with("x1,x2,x3\n"));
    assert!(fs::read_to_string(dir.path().join("ce.csv.meta")).unwrap().contains("master_seed=5"));
}

#[test]
fn ci_mode_requires_seed() {
    let out = betadec().args(["--ci", "verify", "spacing", "--N", "4", "--M", "200"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.conf");
    fs::write(&conf, "# small run\nM = 50\n").unwrap();
    let out = betadec().args(["verify", "gap", "--seed", "1", "--config"]).arg(&conf).output().unwrap();
    assert_eq!(out.status.code(), Some(2), "M below 100 from the file is rejected");
    let out = betadec().args(["verify", "gap", "--seed", "1", "--M", "2000", "--config"]).arg(&conf).output().unwrap();
    assert!(matches!(out.status.code(), Some(0 | 1)), "flag overrides the file");
}
