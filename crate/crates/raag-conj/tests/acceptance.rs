//! One PASS/FAIL line per acceptance criterion; exits non-zero when any
//! criterion fails. `cargo test --test acceptance -- 3 7` runs a subset.

use std::process::ExitCode;
use std::time::Instant;

use raag_conj::verify::{run, CRITERIA};

fn main() -> ExitCode {
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = Vec::new();
    for &(id, _) in CRITERIA {
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let t = Instant::now();
        let r = run(id).expect("listed criterion runs");
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!("{status} criterion {id:>2} ({:.1}s) {}: {}", t.elapsed().as_secs_f64(), r.name, r.detail);
        if !r.passed {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
