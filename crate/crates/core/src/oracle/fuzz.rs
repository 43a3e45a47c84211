//! Randomised validity checks over physical states.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::corpus::{item_seed, structured_states};
use super::VerifySummary;
use crate::bounds::{
    best_params, evaluate, tight_level_params, BoundId, BoundParams, BoundReport, KMode, ParamMode,
    Step,
};
use crate::coherence::{CoherenceProfile, SubsetCoherence};
use crate::config::VALIDITY_TOL;
use crate::exec::Execution;
use crate::qstate::{random_pure, DensityMatrix, PureState};
use crate::scalar_ineq::{dominance_margin, ScalarParams};
use crate::{Error, Result};

/// Random-state fuzz settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub n_states: usize,
    pub n_qubits: usize,
    pub seed: u64,
    pub tolerance: f64,
}

impl FuzzConfig {
    pub fn new(n_states: usize, n_qubits: usize, seed: u64) -> Result<Self> {
        let cfg = Self {
            n_states,
            n_qubits,
            seed,
            tolerance: VALIDITY_TOL,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Result<Self> {
        self.tolerance = tolerance;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_states == 0 {
            return Err(Error::DomainError("n_states must be positive".into()));
        }
        if !(2..=6).contains(&self.n_qubits) {
            return Err(Error::DomainError(format!(
                "n_qubits = {} outside [2, 6]",
                self.n_qubits
            )));
        }
        if !self.tolerance.is_finite() || self.tolerance <= 0.0 {
            return Err(Error::DomainError("tolerance must be positive".into()));
        }
        Ok(())
    }

    /// The `index`-th random state of this run.
    pub fn state(&self, index: usize) -> Result<PureState> {
        random_pure(self.n_qubits, item_seed(self.seed, index as u64))
    }
}

/// Superadditivity checks on one state: the total against the sum of all
/// single-qubit coherences, and every split into two contiguous registers.
///
/// A one-qubit state has nothing to check and is counted as degenerate.
pub fn superadditivity_state(
    rho: &DensityMatrix,
    tolerance: f64,
    label: &str,
) -> Result<VerifySummary> {
    let mut s = VerifySummary::new(tolerance);
    let n = rho.n_qubits();
    if n < 2 {
        s.degenerate += 1;
        return Ok(s);
    }
    let table = SubsetCoherence::new(rho)?;
    let total = table.total();
    let singles: f64 = (0..n).map(|q| table.of_qubits(&[q])).sum();
    s.record("superadditivity_total", total - singles, || {
        format!("{label}: total={total}, singles={singles}")
    });
    let full = (1u32 << n) - 1;
    for cut in 1..n {
        // Qubits 0..cut occupy the high bits of the basis index but bit q of the mask.
        let left: u32 = (0..cut).fold(0, |m, q| m | 1 << q);
        let (a, b) = (table.get(left), table.get(full & !left));
        s.record("superadditivity_split", total - a - b, || {
            format!("{label}: cut={cut}, total={total}, left={a}, right={b}")
        });
    }
    Ok(s)
}

/// Per-item superadditivity summaries: the random states in index order,
/// then a pinned Bell state.
pub fn superadditivity_items(
    cfg: &FuzzConfig,
    exec: Execution,
) -> Result<Vec<(String, VerifySummary)>> {
    cfg.validate()?;
    let parts = exec.map_range(cfg.n_states, |i| -> Result<(String, VerifySummary)> {
        let rho = cfg.state(i)?.density()?;
        let label = format!("state {i}");
        let s = superadditivity_state(&rho, cfg.tolerance, &label)?;
        Ok((label, s))
    });
    let mut items = parts.into_iter().collect::<Result<Vec<_>>>()?;
    let bell = super::corpus::ghz(2)?.density()?;
    items.push((
        "bell".into(),
        superadditivity_state(&bell, cfg.tolerance, "bell")?,
    ));
    Ok(items)
}

/// [`superadditivity_items`] merged into one summary.
pub fn superadditivity_fuzz(cfg: &FuzzConfig, exec: Execution) -> Result<VerifySummary> {
    let items = superadditivity_items(cfg, exec)?;
    Ok(VerifySummary::merge_all(
        cfg.tolerance,
        items.into_iter().map(|(_, s)| s),
    ))
}

const GRID_ALPHA: [f64; 2] = [2.0, 3.0];
const GRID_K: [f64; 2] = [0.6, 1.0];
const GRID_DELTA: [f64; 2] = [1.0, 2.0];
const REF_ONLY_ALPHA: f64 = 1.5;

/// Parameter sets tried on one profile: a fixed grid plus the tightest
/// parameters for every condition pattern the profile satisfies.
fn parameter_sets(profile: &CoherenceProfile) -> Vec<BoundParams> {
    let n = profile.n();
    let mut sets = Vec::new();
    for &alpha in &GRID_ALPHA {
        for &k in &GRID_K {
            for &delta in &GRID_DELTA {
                sets.push(BoundParams::new(alpha, k, delta));
            }
        }
    }
    sets.push(BoundParams::new(REF_ONLY_ALPHA, 0.8, 1.0));

    let mut patterns: Vec<(Vec<Step>, Option<usize>)> = vec![(Step::split(n - 1, n), None)];
    patterns.extend((1..n.saturating_sub(1)).map(|m| (Step::split(m, n), Some(m))));
    if n == 3 {
        patterns.push((Step::ascend_then_descend(), None));
    }
    for (steps, m) in patterns {
        let Ok(ks) = tight_level_params(profile, &steps) else {
            continue;
        };
        let kmax = ks.iter().copied().fold(0.0, f64::max);
        for &alpha in &GRID_ALPHA {
            let mut per = BoundParams::per_index(alpha, ks.clone(), 1.0);
            let mut global = BoundParams::new(alpha, kmax, 1.0);
            per.m = m;
            global.m = m;
            sets.push(per);
            sets.push(global);
        }
    }
    sets
}

fn describe(profile: &CoherenceProfile, params: &BoundParams) -> String {
    format!(
        "ordering={:?}, singles={:?}, tails={:?}, total={}, params={:?}",
        profile.ordering(),
        profile.singles(),
        profile.tails(),
        profile.total(),
        params
    )
}

fn coefficient_floor(report: &BoundReport) -> Option<f64> {
    report
        .coefficients
        .iter()
        .filter(|(name, _)| {
            ["Gamma", "Lambda", "Omega", "Upsilon"]
                .iter()
                .any(|p| name.starts_with(p))
        })
        .map(|(_, v)| *v - 1.0)
        .reduce(f64::min)
}

/// Validity of every requested bound on one profile.
///
/// Records `validity:<bound>` (lhs − rhs on applicable reports),
/// `coefficient_floor:<bound>`, `dominance` for the levels of applicable
/// all-descending reports, and `refinement` (per-level tight
/// parameters never lose to any valid global `k`).
pub fn bound_validity_profile(
    profile: &CoherenceProfile,
    bounds: &[BoundId],
    tolerance: f64,
    label: &str,
) -> VerifySummary {
    let mut s = VerifySummary::new(tolerance);
    let sets = parameter_sets(profile);
    let mut thm1_best_rhs: Vec<(f64, f64)> = Vec::new();
    for params in &sets {
        for &bound in bounds {
            let report = evaluate(profile, bound, params);
            let tally = s.tally(bound.as_str());
            tally.evaluated += 1;
            let report = match report {
                Ok(r) => r,
                Err(_) => {
                    tally.rejected += 1;
                    continue;
                }
            };
            if !report.applicable() {
                continue;
            }
            tally.applicable += 1;
            s.record(
                &format!("validity:{bound}"),
                report.lhs - report.rhs,
                || {
                    format!(
                        "{label}: {}, rhs={}, lhs={}",
                        describe(profile, params),
                        report.rhs,
                        report.lhs
                    )
                },
            );
            if let Some(floor) = coefficient_floor(&report) {
                s.record(&format!("coefficient_floor:{bound}"), floor, || {
                    format!("{label}: {}", describe(profile, params))
                });
            }
            if bound == BoundId::Thm1 && matches!(params.k, KMode::Global(_)) {
                thm1_best_rhs.push((params.alpha, report.rhs));
                dominance_along_chain(&mut s, profile, params, label);
            }
        }
    }
    if bounds.contains(&BoundId::Thm3) {
        for &alpha in &GRID_ALPHA {
            let Ok(best) = best_params(profile, alpha, ParamMode::Thm3) else {
                continue;
            };
            let Ok(refined) = evaluate(profile, BoundId::Thm3, &best) else {
                continue;
            };
            if !refined.applicable() {
                continue;
            }
            for &(_, rhs) in thm1_best_rhs.iter().filter(|(a, _)| *a == alpha) {
                s.record("refinement", refined.rhs - rhs, || {
                    format!(
                        "{label}: {}, thm3={}, thm1={rhs}",
                        describe(profile, &best),
                        refined.rhs
                    )
                });
            }
        }
    }
    s
}

fn dominance_along_chain(
    s: &mut VerifySummary,
    profile: &CoherenceProfile,
    params: &BoundParams,
    label: &str,
) {
    let k = params.k.global_equivalent();
    let Ok(sp) = ScalarParams::new(params.alpha, k, params.delta) else {
        return;
    };
    for (c, t) in profile.singles().iter().zip(profile.tails()) {
        if *c <= 0.0 || *t <= 0.0 {
            continue;
        }
        let x = (t / c).min(sp.kd());
        if let Ok(m) = dominance_margin(x, &sp) {
            s.record("dominance", m.value, || {
                format!("{label}: x={x}, params={params:?}")
            });
        }
    }
}

/// Every ordering for up to four qubits; otherwise identity and reversed.
fn orderings(n: usize) -> Vec<Vec<usize>> {
    if n <= 4 {
        (0..n).permutations(n).collect()
    } else {
        vec![(0..n).collect(), (0..n).rev().collect()]
    }
}

/// [`bound_validity_profile`] over the orderings of one state.
pub fn bound_validity_state(
    rho: &DensityMatrix,
    bounds: &[BoundId],
    tolerance: f64,
    label: &str,
) -> Result<VerifySummary> {
    let table = SubsetCoherence::new(rho)?;
    let mut s = VerifySummary::new(tolerance);
    for ordering in orderings(rho.n_qubits()) {
        let profile = table.profile(&ordering)?;
        s = s.merge(bound_validity_profile(&profile, bounds, tolerance, label));
    }
    Ok(s)
}

/// Per-item bound validity summaries: the random states in index order, then
/// the structured corpus. Every ordering is tried for `N ≤ 4`.
pub fn bound_validity_items(
    cfg: &FuzzConfig,
    bounds: &[BoundId],
    exec: Execution,
) -> Result<Vec<(String, VerifySummary)>> {
    cfg.validate()?;
    if cfg.n_qubits < 3 {
        return Err(Error::DomainError(
            "bound validity needs at least 3 qubits".into(),
        ));
    }
    let random = exec.map_range(cfg.n_states, |i| -> Result<(String, VerifySummary)> {
        let rho = cfg.state(i)?.density()?;
        let label = format!("state {i}");
        let s = bound_validity_state(&rho, bounds, cfg.tolerance, &label)?;
        Ok((label, s))
    });
    let structured = structured_states(cfg.n_qubits, cfg.seed)?;
    let named = exec.map_slice(
        &structured,
        |(name, state)| -> Result<(String, VerifySummary)> {
            let s = bound_validity_state(&state.density()?, bounds, cfg.tolerance, name)?;
            Ok((name.clone(), s))
        },
    );
    random.into_iter().chain(named).collect()
}

/// [`bound_validity_items`] merged into one summary.
pub fn bound_validity_fuzz(
    cfg: &FuzzConfig,
    bounds: &[BoundId],
    exec: Execution,
) -> Result<VerifySummary> {
    let items = bound_validity_items(cfg, bounds, exec)?;
    Ok(VerifySummary::merge_all(
        cfg.tolerance,
        items.into_iter().map(|(_, s)| s),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_is_superadditive() {
        let bell = super::super::corpus::ghz(2).unwrap().density().unwrap();
        let s = superadditivity_state(&bell, 1e-9, "bell").unwrap();
        assert_eq!(s.checks_run, 2);
        assert!((s.worst_slack.unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn single_qubit_is_degenerate() {
        let rho = random_pure(1, 3).unwrap().density().unwrap();
        let s = superadditivity_state(&rho, 1e-9, "one").unwrap();
        assert_eq!(s.checks_run, 0);
        assert_eq!(s.degenerate, 1);
        assert!(FuzzConfig::new(10, 1, 0).is_err());
        assert!(FuzzConfig::new(0, 3, 0).is_err());
    }

    #[test]
    fn small_fuzz_runs_clean_and_reproducibly() {
        let cfg = FuzzConfig::new(20, 3, 7).unwrap();
        let a = superadditivity_fuzz(&cfg, Execution::Parallel).unwrap();
        let b = superadditivity_fuzz(&cfg, Execution::Sequential).unwrap();
        assert!(a.passed());
        assert_eq!(a, b);
        let v = bound_validity_fuzz(&cfg, &BoundId::ALL, Execution::Parallel).unwrap();
        assert!(v.passed(), "{:?}", v.violations);
        assert!(v.tallies["Baseline4"].applicable > 0);
    }
}
