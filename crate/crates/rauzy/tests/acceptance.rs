//! One line per criterion, always printed; exits non-zero if any fails.

use std::process::ExitCode;

use rauzy::verify::{run, Criterion};
use rauzy::RunConfig;

fn main() -> ExitCode {
    let cfg = RunConfig::verification();
    let mut failed = Vec::new();
    for c in Criterion::ALL {
        let r = match run(c, &cfg) {
            Ok(r) => r,
            Err(e) => {
                println!("criterion {} {}: FAIL {e}", c.id(), c.name());
                failed.push(c.id());
                continue;
            }
        };
        println!("criterion {} {}: {} {}", r.id, r.name, if r.passed { "PASS" } else { "FAIL" }, r.detail);
        if !r.passed {
            failed.push(r.id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: 12/12 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
