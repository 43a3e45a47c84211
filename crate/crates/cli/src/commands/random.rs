use l1coh::bounds::BoundId;
use l1coh::oracle::{bound_validity_items, superadditivity_items, FuzzConfig, VerifySummary};
use serde::Serialize;

use crate::args::RandomArgs;
use crate::output::{num, sink, write_csv};
use crate::{Globals, Outcome};

const HEADER: [&str; 5] = ["check", "item", "checks_run", "worst_slack", "violations"];

#[derive(Serialize)]
struct Summary {
    superadditivity: VerifySummary,
    /// Absent for two-qubit runs, where no bound applies.
    bound_validity: Option<VerifySummary>,
}

fn rows<'a>(
    check: &'a str,
    items: &'a [(String, VerifySummary)],
) -> impl Iterator<Item = Vec<String>> + 'a {
    items.iter().map(move |(label, s)| {
        vec![
            check.to_string(),
            label.clone(),
            s.checks_run.to_string(),
            s.worst_slack.map(num).unwrap_or_default(),
            s.violation_count.to_string(),
        ]
    })
}

fn line(name: &str, s: &VerifySummary) -> String {
    format!(
        "{name}: {} checks, {} violations, worst slack {}",
        s.checks_run,
        s.violation_count,
        s.worst_slack.map(num).unwrap_or_else(|| "n/a".into())
    )
}

pub fn run(a: &RandomArgs, g: &Globals) -> Result<Outcome, String> {
    let cfg = FuzzConfig::new(a.n, a.qubits, a.seed)
        .and_then(|c| c.with_tolerance(g.tolerance))
        .map_err(|e| e.to_string())?;
    let superadd = superadditivity_items(&cfg, g.exec).map_err(|e| e.to_string())?;
    let validity = if a.qubits >= 3 {
        Some(bound_validity_items(&cfg, &BoundId::ALL, g.exec).map_err(|e| e.to_string())?)
    } else {
        None
    };

    let header: Vec<String> = HEADER.iter().map(|h| h.to_string()).collect();
    let all_rows = rows("superadditivity", &superadd)
        .chain(validity.iter().flat_map(|v| rows("bound_validity", v)));
    write_csv(sink(a.out.as_deref(), g.force)?, &header, all_rows)?;

    let merge = |items: Vec<(String, VerifySummary)>| {
        VerifySummary::merge_all(g.tolerance, items.into_iter().map(|(_, s)| s))
    };
    let summary = Summary {
        superadditivity: merge(superadd),
        bound_validity: validity.map(merge),
    };
    let passed = summary.superadditivity.passed()
        && summary.bound_validity.as_ref().is_none_or(|s| s.passed());

    // With the CSV on stdout the summary goes to stderr so the CSV stays clean.
    let text = if g.json {
        serde_json::to_string_pretty(&summary).map_err(|e| e.to_string())?
    } else {
        let mut text = line("superadditivity", &summary.superadditivity);
        if let Some(v) = &summary.bound_validity {
            text.push_str("; ");
            text.push_str(&line("bound validity", v));
        }
        text
    };
    if a.out.is_some() {
        println!("{text}");
    } else {
        eprintln!("{text}");
    }
    Ok(if passed {
        Outcome::Success
    } else {
        Outcome::Violation
    })
}
