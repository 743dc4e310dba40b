//! Runs every acceptance criterion at its stated tolerance and prints one
//! PASS/FAIL line per criterion. Set `CIVITA_SEED` to vary the inputs.

use std::process::ExitCode;

use civita::suite;

fn main() -> ExitCode {
    let seed = std::env::var("CIVITA_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0);
    println!("acceptance suite, seed {}", seed);
    let results = suite::run_all(seed);
    for r in &results {
        println!("{}", r);
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("{} passed, {} failed", results.len() - failed, failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
