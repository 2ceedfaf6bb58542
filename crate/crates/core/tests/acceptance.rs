//! Acceptance suite: runs every verification check at its pinned tolerance
//! and prints one line per criterion.
//!
//! Run with `cargo test -p singosc4-core --test acceptance -- --nocapture`
//! to see the per-check lines.

use singosc4_core::verify::{run_all, VerifyConfig};

#[test]
fn acceptance_criteria() {
    let report = run_all(&VerifyConfig::default()).expect("suite must complete");
    let mut failed = Vec::new();
    for c in &report.checks {
        println!(
            "{} {:<34} measured = {:<12.3e} bound = {:.1e}",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.measured,
            c.bound
        );
        if !c.pass {
            failed.push(format!("{}: measured {:e} > bound {:e}", c.name, c.measured, c.bound));
        }
    }
    assert!(report.passed, "failed checks:\n{}", failed.join("\n"));
}
