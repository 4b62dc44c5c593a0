//! Runs the full acceptance battery and prints one pass/fail line per
//! criterion.

use ut_topology::acceptance::run_battery;

#[test]
fn acceptance_battery() {
    let results = run_battery();
    let mut failures = 0;
    for r in &results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!("[{status}] criterion {:>2}: {} — {}", r.id, r.name, r.detail);
        if !r.passed {
            failures += 1;
        }
    }
    assert_eq!(failures, 0, "{failures} acceptance criteria failed");
}
