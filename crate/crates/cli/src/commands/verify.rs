use l1coh::oracle::{inequality_grid_verify, pinned_goldens, GridSpec, VerifySummary};

use crate::output::{num, print_json};
use crate::{Globals, Outcome};

/// Violations listed in the text report.
const SHOWN: usize = 10;

fn section(name: &str, s: &VerifySummary) {
    let status = if s.passed() { "pass" } else { "FAIL" };
    println!(
        "{name}: {status} ({} checks, {} violations, worst slack {})",
        s.checks_run,
        s.violation_count,
        s.worst_slack.map(num).unwrap_or_else(|| "n/a".into())
    );
    for (check, worst) in &s.worst_by_check {
        println!("    {check:<24} worst slack {}", num(*worst));
    }
}

pub fn run(self_test: bool, g: &Globals) -> Result<Outcome, String> {
    let grid = inequality_grid_verify(&GridSpec::default(), g.exec).map_err(|e| e.to_string())?;
    let goldens = pinned_goldens(self_test).map_err(|e| e.to_string())?;
    let combined = grid.clone().merge(goldens.clone());

    if g.json {
        print_json(&combined)?;
    } else {
        section("scalar inequality grid", &grid);
        section("pinned values and identities", &goldens);
        let mut worst = combined.violations.clone();
        worst.sort_by(|a, b| a.slack.total_cmp(&b.slack));
        for v in worst.iter().take(SHOWN) {
            println!(
                "violation {}: slack {} ({})",
                v.check,
                num(v.slack),
                v.inputs
            );
        }
        println!(
            "{}",
            if combined.passed() {
                "verify: pass"
            } else {
                "verify: FAIL"
            }
        );
    }
    Ok(if combined.passed() {
        Outcome::Success
    } else {
        Outcome::Violation
    })
}
