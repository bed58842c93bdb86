//! Runner for the acceptance criteria in `tests/acceptance.rs`.

use std::time::Duration;

pub struct Outcome {
    pub pass: bool,
    pub detail: String,
}

impl Outcome {
    pub fn new(pass: bool, detail: String) -> Self {
        Self { pass, detail }
    }
}

pub fn within(elapsed: Duration, limit: Duration) -> bool {
    elapsed < limit
}

/// Runs every criterion, prints one line each plus a summary, and returns
/// the number of failures.
pub fn run_criteria(criteria: &[(&str, fn() -> Outcome)]) -> usize {
    let mut failed = 0;
    for (name, check) in criteria {
        let o = check();
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {name}: {} | {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    failed
}
