//! The acceptance suite: every criterion at its pinned tolerance, one
//! pass/fail line per criterion (visible with `-- --nocapture`), plus the
//! runtime budgets.

use semigroup_lab::verify::{print_outcomes, run_suite, Suite, VerifyConfig};

#[test]
fn acceptance_suite_passes_at_stated_tolerances() {
    let cfg = VerifyConfig::default();
    let outcomes = run_suite(Suite::All, &cfg).expect("no numerical failures");
    print_outcomes(&outcomes);

    assert_eq!(outcomes.len(), 10);
    let mut failures = Vec::new();
    for o in &outcomes {
        if !o.passed {
            for c in o.checks.iter().filter(|c| !c.passed) {
                failures.push(format!("criterion {}: {} [{}]", o.id, c.name, c.detail));
            }
        }
        assert!(
            o.elapsed_s < o.budget_s,
            "criterion {} overran its runtime budget: {:.2} s >= {:.0} s",
            o.id,
            o.elapsed_s,
            o.budget_s
        );
    }
    assert!(failures.is_empty(), "failed checks:\n{}", failures.join("\n"));
}
