//! End-to-end acceptance run: every check of the suite at full size, one
//! PASS/FAIL line each. Set `BETADEC_ACCEPTANCE_OUT` to keep the report and
//! sample CSVs.

use std::process::ExitCode;
use std::time::Instant;

use betadec::suite::{self, CheckOutcome, SuiteConfig};

fn main() -> ExitCode {
    // `cargo test -- --list` and filtered runs pass arguments; honour a filter
    // that excludes this target so unrelated test invocations stay fast.
    let args: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    if !args.is_empty() && !args.iter().any(|f| "acceptance".contains(f.as_str())) {
        return ExitCode::SUCCESS;
    }

    let cfg = SuiteConfig {
        out_dir: std::env::var_os("BETADEC_ACCEPTANCE_OUT").map(Into::into),
        ..SuiteConfig::default()
    };
    let start = Instant::now();
    let checks: Vec<(u8, Box<dyn Fn(&SuiteConfig) -> CheckOutcome>)> = vec![
        (1, Box::new(|_| suite::check_phase_sums(8))),
        (2, Box::new(|_| suite::check_selberg_morris())),
        (3, Box::new(|c| suite::check_interlaced_line(c.seed))),
        (4, Box::new(|c| suite::check_interlaced_circle(c.seed))),
        (5, Box::new(|c| suite::check_decimation(c).expect("decimation suite"))),
        (6, Box::new(|c| suite::check_composition(c).expect("composition suite"))),
        (7, Box::new(|c| suite::check_superposition(c).expect("superposition suite"))),
        (8, Box::new(|c| suite::check_tridiagonal(c).expect("tridiagonal suite"))),
        (9, Box::new(|c| suite::check_gap(c).expect("gap suite"))),
        (10, Box::new(|c| suite::check_spacing(c).expect("spacing suite"))),
        (11, Box::new(|_| suite::check_asymptotic())),
        (12, Box::new(|c| suite::check_determinism(c).expect("determinism suite"))),
    ];
    let mut failed = Vec::new();
    for (id, check) in &checks {
        let outcome = check(&cfg);
        assert_eq!(outcome.id, *id);
        println!("criterion {id:>2}: {} ({}) {}", if outcome.pass { "PASS" } else { "FAIL" }, outcome.name, outcome.detail);
        if !outcome.pass {
            failed.push(*id);
        }
    }
    println!("acceptance: {} of {} criteria passed in {:.0}s", checks.len() - failed.len(), checks.len(), start.elapsed().as_secs_f64());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
