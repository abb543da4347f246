//! The full cross-module invariant suite with default configuration must
//! pass; this is the same set of checks the CLI `verify` command runs.

use obflow::verify::{run_all, VerifyConfig};

#[test]
fn default_verification_suite_passes() {
    let cfg = VerifyConfig::default();
    let results = run_all(&cfg).expect("suite names are valid");
    let mut failed = Vec::new();
    for r in &results {
        println!(
            "{:12} {:32} {} measured={:.3e} threshold={:.3e} {}",
            r.suite,
            r.name,
            if r.passed { "PASS" } else { "FAIL" },
            r.measured,
            r.threshold,
            r.detail
        );
        if !r.passed {
            failed.push(format!("{}/{}", r.suite, r.name));
        }
    }
    assert!(failed.is_empty(), "failing invariants: {}", failed.join(", "));
}
