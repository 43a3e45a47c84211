use std::path::Path;

use l1coh::statefile::StateSpec;
use serde::Serialize;

use super::{load, profile_of};
use crate::output::{num, print_json};
use crate::{Globals, Outcome};

/// Total coherence published for the uniform five-term three-qubit state.
const PUBLISHED_UNIFORM_TOTAL: &str = "18/5";

#[derive(Serialize)]
struct Report {
    n_qubits: usize,
    ordering: Vec<usize>,
    total: f64,
    singles: Vec<f64>,
    tails: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

fn uniform_schmidt(spec: &StateSpec) -> bool {
    match spec {
        StateSpec::Schmidt3 { lambda, .. } => lambda.iter().all(|l| (l - lambda[0]).abs() < 1e-9),
        _ => false,
    }
}

pub fn run(path: &Path, g: &Globals) -> Result<Outcome, String> {
    let input = load(path)?;
    let n = input.state.n_qubits();
    let ordering: Vec<usize> = (0..n).collect();
    let p = profile_of(&input, &ordering)?;
    let note = uniform_schmidt(&input.spec).then(|| {
        format!(
            "total {} is computed from the density matrix; the published value for this state is {PUBLISHED_UNIFORM_TOTAL}",
            num(p.total())
        )
    });
    let report = Report {
        n_qubits: n,
        ordering,
        total: p.total(),
        singles: p.singles().to_vec(),
        tails: p.tails().to_vec(),
        note,
    };
    if g.json {
        print_json(&report)?;
    } else {
        println!("qubits: {n}");
        println!("total: {}", num(report.total));
        for (i, c) in report.singles.iter().enumerate() {
            println!("single {}: {}", i + 1, num(*c));
        }
        for (i, t) in report.tails.iter().enumerate() {
            println!("tail {}..{n}: {}", i + 2, num(*t));
        }
        if let Some(note) = &report.note {
            println!("note: {note}");
        }
    }
    Ok(Outcome::Success)
}
