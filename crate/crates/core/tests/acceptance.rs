//! Acceptance gate: every property suite at its stated parameters, one
//! pass/fail line per criterion.

use std::process::ExitCode;

use ershov_core::harness::{run_suite, SuiteOptions, SUITES};

fn main() -> ExitCode {
    let opts = SuiteOptions::default();
    let mut failed = Vec::new();
    for (k, name) in SUITES.iter().enumerate() {
        let line = match run_suite(name, &opts) {
            Ok(report) => {
                if !report.passed() {
                    failed.push(*name);
                }
                report.to_string()
            }
            Err(e) => {
                failed.push(*name);
                format!("{name}: FAIL (error: {e})")
            }
        };
        println!("criterion {} {line}", k + 1);
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", SUITES.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
