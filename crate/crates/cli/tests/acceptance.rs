//! One PASS/FAIL line per acceptance criterion. Lines go straight to the
//! stdout handle so they show up without `--nocapture`.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use tensoraxiom_cli::suite::{self, CriterionReport, CRITERIA, DEFAULT_SEED, SEED_VAR};

fn limit(id: u8) -> Duration {
    Duration::from_secs(match id {
        1 | 5 => 10,
        7 => 60,
        _ => 5,
    })
}

fn line(text: &str) {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{text}").unwrap();
    out.flush().unwrap();
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn run_criterion(id: u8, f: suite::Criterion) -> bool {
    let start = Instant::now();
    let report: CriterionReport = f(DEFAULT_SEED);
    let elapsed = start.elapsed();
    let ok = report.passed && elapsed < limit(id);
    line(&format!(
        "{} criterion {id}: {} ({} cases, {} failures, {:.2}s, limit {}s)",
        verdict(ok),
        report.name,
        report.cases,
        report.failure_count,
        elapsed.as_secs_f64(),
        limit(id).as_secs()
    ));
    for msg in &report.failures {
        line(&format!("    {msg}"));
    }
    ok
}

fn run_suite_binary(seed: u64) -> (Vec<u8>, Option<i32>) {
    let out = Command::new(env!("CARGO_BIN_EXE_tensoraxiom"))
        .arg("suite")
        .env(SEED_VAR, seed.to_string())
        .output()
        .expect("the tensoraxiom binary runs");
    (out.stdout, out.status.code())
}

fn determinism() -> bool {
    let seed = 20_241_016;
    let (a, code_a) = run_suite_binary(seed);
    let (b, code_b) = run_suite_binary(seed);
    let parsed: serde_json::Value = serde_json::from_slice(&a).unwrap_or_default();
    let ok =
        !a.is_empty() && a == b && code_a == Some(0) && code_b == Some(0) && parsed["seed"] == seed;
    line(&format!(
        "{} criterion 8: CLI determinism ({} report bytes, identical: {}, exit codes {:?}/{:?})",
        verdict(ok),
        a.len(),
        a == b,
        code_a,
        code_b
    ));
    ok
}

#[test]
fn acceptance() {
    line("");
    let mut all = true;
    for (id, _, f) in CRITERIA {
        all &= run_criterion(id, f);
    }
    all &= determinism();
    assert!(all, "at least one acceptance criterion failed");
}
