//! Runs every conformance suite over the standard charge pools.
//!
//!     cargo run --release --example verify_theorems -- 5

use fock_crystal::verify::{run_suite, Suite, VerifyConfig};

fn main() {
    let max_rank = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(4);
    let config = VerifyConfig::standard(max_rank);
    let report = run_suite(Suite::All, &config).expect("suites run");
    print!("{report}");
    if !report.passed() {
        std::process::exit(1);
    }
}
