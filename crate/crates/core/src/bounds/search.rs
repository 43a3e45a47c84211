//! Parameter and qubit-ordering search.

use itertools::Itertools;

use super::{evaluate, BoundId, BoundParams, BoundReport, KMode, Step};
use crate::coherence::{is_zero, CoherenceProfile, SubsetCoherence};
use crate::config::Config;
use crate::exec::Execution;
use crate::qstate::DensityMatrix;
use crate::{Error, Result};

/// Largest register for exhaustive ordering search (8! orderings).
pub const MAX_SEARCH_QUBITS: usize = 8;

/// Which all-descending bound to tune.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamMode {
    /// One global `k`.
    Thm1,
    /// One `k_n` per level.
    Thm3,
}

/// Smallest admissible `K` for a level, or `None` when the level does not
/// constrain `K`: a zero tail ends the chain, and a zero single either drops
/// out or trivially satisfies `C_p ≤ K·T`.
fn level_ratio(single: f64, tail: f64, step: Step) -> Option<f64> {
    if is_zero(tail) || is_zero(single) {
        return None;
    }
    match step {
        Step::Descend => Some(tail / single),
        Step::Ascend => Some(single / tail),
    }
}

/// Smallest valid `k` per level (with `δ = 1`) for the given step pattern.
///
/// Γ is non-increasing in `k^δ`, so these are the tightest parameters. Levels
/// that do not constrain `k` get `k = 1`.
pub fn tight_level_params(profile: &CoherenceProfile, steps: &[Step]) -> Result<Vec<f64>> {
    if steps.len() + 1 != profile.n() {
        return Err(Error::ArityMismatch {
            got: steps.len(),
            expected: profile.n().saturating_sub(1),
        });
    }
    let slack = Config::global().condition_slack;
    profile
        .singles()
        .iter()
        .zip(profile.tails())
        .zip(steps)
        .enumerate()
        .map(|(p, ((&s, &t), &step))| match level_ratio(s, t, step) {
            None => Ok(1.0),
            Some(r) if r > 1.0 + slack => Err(Error::NoValidParams(format!(
                "level {} needs k >= {r}, above 1",
                p + 1
            ))),
            Some(r) => Ok(r.clamp(f64::MIN_POSITIVE, 1.0)),
        })
        .collect()
}

/// Tightest valid parameters for the all-descending bounds, with `δ = 1`.
///
/// `Thm1` takes `k = max_n C_{n+1..N}/C_n`; `Thm3` takes each ratio as its
/// own `k_n`. Fails with [`Error::NoValidParams`] when a ratio exceeds 1.
pub fn best_params(profile: &CoherenceProfile, alpha: f64, mode: ParamMode) -> Result<BoundParams> {
    let n = profile.n();
    if n < 2 {
        return Err(Error::NoValidParams("need at least two qubits".into()));
    }
    let ks = tight_level_params(profile, &Step::split(n - 1, n))?;
    Ok(match mode {
        ParamMode::Thm3 => BoundParams::per_index(alpha, ks, 1.0),
        ParamMode::Thm1 => {
            let constrained = profile
                .singles()
                .iter()
                .zip(profile.tails())
                .zip(&ks)
                .filter(|((s, t), _)| level_ratio(**s, **t, Step::Descend).is_some())
                .map(|(_, k)| *k);
            let k = constrained.fold(None, |acc: Option<f64>, k| {
                Some(acc.map_or(k, |a| a.max(k)))
            });
            BoundParams::new(alpha, k.unwrap_or(1.0), 1.0)
        }
    })
}

/// Best ordering found by an exhaustive search.
#[derive(Debug, Clone)]
pub struct OrderingSearch {
    pub ordering: Vec<usize>,
    pub report: BoundReport,
    /// Orderings tried.
    pub tried: usize,
    /// Orderings under which the bound was applicable.
    pub applicable: usize,
}

/// Tries every qubit ordering and keeps the applicable report with the
/// largest `rhs`; ties go to the lexicographically first ordering.
pub fn best_ordering_by<F>(
    rho: &DensityMatrix,
    exec: Execution,
    label: &str,
    eval: F,
) -> Result<OrderingSearch>
where
    F: Fn(&CoherenceProfile) -> Result<BoundReport> + Sync + Send,
{
    let n = rho.n_qubits();
    if n > MAX_SEARCH_QUBITS {
        return Err(Error::TooManyQubits {
            n,
            max: MAX_SEARCH_QUBITS,
        });
    }
    let table = SubsetCoherence::new(rho)?;
    let orderings: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let results = exec.map_slice(&orderings, |ordering| -> Result<Option<BoundReport>> {
        let report = eval(&table.profile(ordering)?)?;
        Ok(report.applicable().then_some(report))
    });

    let mut best: Option<BoundReport> = None;
    let mut applicable = 0;
    for result in results {
        if let Some(report) = result? {
            applicable += 1;
            if best.as_ref().is_none_or(|b| report.rhs > b.rhs) {
                best = Some(report);
            }
        }
    }
    match best {
        Some(report) => Ok(OrderingSearch {
            ordering: report.ordering.clone(),
            report,
            tried: orderings.len(),
            applicable,
        }),
        None => Err(Error::NotApplicable {
            bound: label.to_string(),
            failed: vec![format!(
                "no ordering of {n} qubits satisfies the conditions"
            )],
        }),
    }
}

/// [`best_ordering_by`] for one bound with fixed parameters.
pub fn best_ordering(
    rho: &DensityMatrix,
    params: &BoundParams,
    bound: BoundId,
    exec: Execution,
) -> Result<OrderingSearch> {
    best_ordering_by(rho, exec, bound.as_str(), |profile| {
        evaluate(profile, bound, params)
    })
}

impl KMode {
    pub fn is_per_index(&self) -> bool {
        matches!(self, KMode::PerIndex(_))
    }
}
