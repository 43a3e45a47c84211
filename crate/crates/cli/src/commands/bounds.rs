use l1coh::bounds::{
    best_ordering_by, best_params, evaluate_or_reject, sort_reports, BoundId, BoundParams,
    BoundReport, ParamMode,
};
use l1coh::coherence::CoherenceProfile;
use l1coh::Error;
use serde::Serialize;

use super::{load, ordering, params, profile_of};
use crate::args::BoundsArgs;
use crate::output::{num, print_json};
use crate::{Globals, Outcome};

#[derive(Serialize)]
struct Output<'a> {
    lhs: f64,
    reports: &'a [BoundReport],
    /// Qubit ordering behind each report, in report order.
    orderings: Vec<&'a [usize]>,
}

/// Parameters for one bound on one profile: the flags, or the tightest valid
/// `k` for the all-descending bounds under `--auto-params` when one exists.
fn params_for(
    base: &BoundParams,
    profile: &CoherenceProfile,
    bound: BoundId,
    auto: bool,
) -> BoundParams {
    let mode = match bound {
        BoundId::Thm1 => ParamMode::Thm1,
        BoundId::Thm3 => ParamMode::Thm3,
        _ => return base.clone(),
    };
    if !auto {
        return base.clone();
    }
    best_params(profile, base.alpha, mode).unwrap_or_else(|_| base.clone())
}

pub fn run(a: &BoundsArgs, g: &Globals) -> Result<Outcome, String> {
    let input = load(&a.state)?;
    let n = input.state.n_qubits();
    let mut base = params(&a.params, n)?;
    if let Some(m) = a.m {
        if m == 0 || m >= n {
            return Err(format!("--m {m} outside [1, {}]", n - 1));
        }
        base = base.with_m(m);
    }
    let eval = |profile: &CoherenceProfile, bound: BoundId| {
        evaluate_or_reject(
            profile,
            bound,
            &params_for(&base, profile, bound, a.auto_params),
        )
    };

    let ordering = ordering(&a.params, n)?;
    let fixed = profile_of(&input, &ordering)?;
    let mut reports: Vec<BoundReport> = if a.auto_ordering {
        let rho = input.state.density().map_err(|e| e.to_string())?;
        BoundId::ALL
            .iter()
            .map(|&bound| {
                match best_ordering_by(&rho, g.exec, bound.as_str(), |p| Ok(eval(p, bound))) {
                    Ok(search) => Ok(search.report),
                    Err(Error::NotApplicable { .. }) => Ok(eval(&fixed, bound)),
                    Err(e) => Err(e.to_string()),
                }
            })
            .collect::<Result<_, _>>()?
    } else {
        BoundId::ALL
            .iter()
            .map(|&bound| eval(&fixed, bound))
            .collect()
    };
    sort_reports(&mut reports);

    let lhs = fixed.lhs(base.alpha);
    if g.json {
        print_json(&Output {
            lhs,
            reports: &reports,
            orderings: reports.iter().map(|r| r.ordering.as_slice()).collect(),
        })?;
    } else {
        print_table(&reports, lhs, a.auto_ordering);
    }

    let any = reports
        .iter()
        .any(|r| r.applicable() && r.bound != BoundId::Baseline4);
    Ok(if any {
        Outcome::Success
    } else {
        Outcome::NoApplicableBound
    })
}

fn join(xs: &[usize]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn print_table(reports: &[BoundReport], lhs: f64, per_report_ordering: bool) {
    println!("lhs: {}", num(lhs));
    if !per_report_ordering {
        if let Some(r) = reports.first() {
            println!("ordering: {}", join(&r.ordering));
        }
    }
    for r in reports {
        let status = if r.applicable() {
            "applicable"
        } else {
            "not applicable"
        };
        print!(
            "{:<10} {:<15} rhs {:<22} gap {}",
            r.bound.as_str(),
            status,
            num(r.rhs),
            num(r.gap)
        );
        if per_report_ordering {
            print!("  ordering {}", join(&r.ordering));
        }
        println!();
        for failed in r.verdict.failed() {
            println!("    fails: {failed}");
        }
        if !r.dropped.is_empty() {
            println!("    dropped zero terms at positions {}", join(&r.dropped));
        }
    }
}
