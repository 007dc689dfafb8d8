//! End-to-end acceptance suite: runs every criterion of the verification
//! checklist and prints one pass/fail line per criterion.
//!
//! The same checks back the CLI `selftest` subcommand.

use hbdmu::selftest;

#[test]
fn acceptance_criteria() {
    let outcomes = selftest::run_all(0x5eed_0001);
    let mut all = true;
    for o in &outcomes {
        println!(
            "criterion {}: {:<28} {}  [{}]",
            o.id,
            o.name,
            if o.passed { "PASS" } else { "FAIL" },
            o.details
        );
        all &= o.passed;
    }
    assert!(all, "one or more acceptance criteria failed");
}
