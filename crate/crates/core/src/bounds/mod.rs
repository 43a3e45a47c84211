//! Superadditivity lower bounds on `C_total^α`.
//!
//! Every bound has the form `C_total^α ≥ Σ_n λ_n C_n^α` over an ordered
//! [`CoherenceProfile`], valid when a system of per-level conditions holds.
//! Evaluators always return a [`BoundReport`]; a bound whose conditions fail
//! is reported with `applicable = false` (its `rhs` is the formula value,
//! which is then not a valid bound). Malformed inputs (wrong arity, bad
//! parameter domains) are errors.
//!
//! | id | levels | coefficient |
//! |----|--------|-------------|
//! | `Baseline4` | none | `λ_n = 1` |
//! | `Ref29` / `Ref30` / `Ref31` | descending prefix of length `m`, then ascending | Λ with `K = 1`, `k`, `k^δ` |
//! | `Thm1` | all descending | Γ, Ω, global `k` |
//! | `Thm2` | descending prefix `m`, then ascending | Γ, Ω, Υ, global `k` |
//! | `Cor1` | ascend then descend (three qubits) | Γ, Ω, Υ |
//! | `Thm3` | all descending | per-level Γ_n |
//! | `Thm4` | descending prefix `m`, then ascending | per-level Γ_n |
//!
//! For the split bounds the final term carries `Γ_1…Γ_m · Υ_{m+1}…Υ_{N−1}`,
//! which makes the per-level bound collapse to the global one when all
//! `k_n` coincide.

mod chain;
mod search;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::coherence::{self, CoherenceProfile};
use crate::qstate::DensityMatrix;
use crate::scalar_ineq::pow;
use crate::{Error, Result};

use chain::{ChainSpec, Family, KLabel};

pub use search::{
    best_ordering, best_ordering_by, best_params, tight_level_params, OrderingSearch, ParamMode,
    MAX_SEARCH_QUBITS,
};

/// Bound identifiers; the string forms are part of the CLI and JSON contract.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundId {
    Baseline4,
    Ref29,
    Ref30,
    Ref31,
    Thm1,
    Thm2,
    Cor1,
    Thm3,
    Thm4,
}

impl BoundId {
    pub const ALL: [BoundId; 9] = [
        BoundId::Baseline4,
        BoundId::Ref29,
        BoundId::Ref30,
        BoundId::Ref31,
        BoundId::Thm1,
        BoundId::Thm2,
        BoundId::Cor1,
        BoundId::Thm3,
        BoundId::Thm4,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundId::Baseline4 => "Baseline4",
            BoundId::Ref29 => "Ref29",
            BoundId::Ref30 => "Ref30",
            BoundId::Ref31 => "Ref31",
            BoundId::Thm1 => "Thm1",
            BoundId::Thm2 => "Thm2",
            BoundId::Cor1 => "Cor1",
            BoundId::Thm3 => "Thm3",
            BoundId::Thm4 => "Thm4",
        }
    }

    /// Smallest admissible α.
    pub fn min_alpha(self) -> f64 {
        match self {
            BoundId::Baseline4 | BoundId::Ref29 | BoundId::Ref30 | BoundId::Ref31 => 1.0,
            _ => 2.0,
        }
    }

    pub fn scheme(self) -> Option<RefScheme> {
        match self {
            BoundId::Ref29 => Some(RefScheme::Ref29),
            BoundId::Ref30 => Some(RefScheme::Ref30),
            BoundId::Ref31 => Some(RefScheme::Ref31),
            _ => None,
        }
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoundId::ALL
            .into_iter()
            .find(|b| b.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::DomainError(format!("unknown bound id {s:?}")))
    }
}

impl Serialize for BoundId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Comparator coefficient schemes: `Λ` with `K = 1`, `K = k` or `K = k^δ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RefScheme {
    Ref29,
    Ref30,
    Ref31,
}

impl RefScheme {
    pub fn id(self) -> BoundId {
        match self {
            RefScheme::Ref29 => BoundId::Ref29,
            RefScheme::Ref30 => BoundId::Ref30,
            RefScheme::Ref31 => BoundId::Ref31,
        }
    }
}

/// One expansion step of the level chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Step {
    /// Single-qubit coherence dominates its tail: `T ≤ K·C_n`.
    Descend,
    /// Tail dominates: `C_n ≤ K·T`.
    Ascend,
}

impl Step {
    /// `m` descending levels followed by ascending ones, `n - 1` levels total.
    pub fn split(m: usize, n: usize) -> Vec<Step> {
        (0..n.saturating_sub(1))
            .map(|p| if p < m { Step::Descend } else { Step::Ascend })
            .collect()
    }

    /// Ascend at the first level, descend at the second.
    pub fn ascend_then_descend() -> Vec<Step> {
        vec![Step::Ascend, Step::Descend]
    }
}

/// Global `k` or one `k_n` per level.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum KMode {
    Global(f64),
    PerIndex(Vec<f64>),
}

impl KMode {
    /// `k` values for `levels` levels.
    pub fn per_level(&self, levels: usize) -> Result<Vec<f64>> {
        match self {
            KMode::Global(k) => Ok(vec![*k; levels]),
            KMode::PerIndex(ks) if ks.len() == levels => Ok(ks.clone()),
            KMode::PerIndex(ks) => Err(Error::ArityMismatch {
                got: ks.len(),
                expected: levels,
            }),
        }
    }

    /// A single `k` admissible wherever the per-level list is: the largest one.
    pub fn global_equivalent(&self) -> f64 {
        match self {
            KMode::Global(k) => *k,
            KMode::PerIndex(ks) => ks.iter().copied().fold(f64::NAN, f64::max),
        }
    }

    fn values(&self) -> Vec<f64> {
        match self {
            KMode::Global(k) => vec![*k],
            KMode::PerIndex(ks) => ks.clone(),
        }
    }
}

/// α, δ, `k` and an optional split index `m` (1-based, as in `C_1..C_m`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundParams {
    pub alpha: f64,
    pub delta: f64,
    pub k: KMode,
    pub m: Option<usize>,
}

impl BoundParams {
    pub fn new(alpha: f64, k: f64, delta: f64) -> Self {
        Self {
            alpha,
            delta,
            k: KMode::Global(k),
            m: None,
        }
    }

    pub fn per_index(alpha: f64, ks: Vec<f64>, delta: f64) -> Self {
        Self {
            alpha,
            delta,
            k: KMode::PerIndex(ks),
            m: None,
        }
    }

    pub fn with_m(mut self, m: usize) -> Self {
        self.m = Some(m);
        self
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    /// Checks `α ≥ min_alpha`, `δ ≥ 1` and every `k ∈ (0, 1]`.
    pub fn validate(&self, min_alpha: f64) -> Result<()> {
        if !self.alpha.is_finite() || self.alpha < min_alpha {
            return Err(Error::DomainError(format!(
                "alpha = {} must be >= {min_alpha}",
                self.alpha
            )));
        }
        if !self.delta.is_finite() || self.delta < 1.0 {
            return Err(Error::DomainError(format!(
                "delta = {} must be >= 1",
                self.delta
            )));
        }
        let ks = self.k.values();
        if ks.is_empty() {
            return Err(Error::DomainError("empty k list".into()));
        }
        if let Some(k) = ks
            .iter()
            .find(|k| !k.is_finite() || **k <= 0.0 || **k > 1.0)
        {
            return Err(Error::DomainError(format!("k = {k} outside (0, 1]")));
        }
        Ok(())
    }
}

/// One applicability condition; `lhs` and `rhs` are the two sides as written
/// in `description`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Condition {
    pub description: String,
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionVerdict {
    pub applicable: bool,
    pub per_condition: Vec<Condition>,
}

impl ConditionVerdict {
    fn from_conditions(per_condition: Vec<Condition>) -> Self {
        Self {
            applicable: per_condition.iter().all(|c| c.satisfied),
            per_condition,
        }
    }

    pub fn failed(&self) -> Vec<String> {
        self.per_condition
            .iter()
            .filter(|c| !c.satisfied)
            .map(|c| format!("{} ({} vs {})", c.description, c.lhs, c.rhs))
            .collect()
    }
}

/// Result of evaluating one bound on one profile.
///
/// Serialises to
/// `{"bound", "applicable", "conditions", "rhs", "lhs", "gap", "coefficients", "dropped"}`.
/// `dropped` lists 1-based positions whose zero-coherence term was omitted.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub bound: BoundId,
    pub params: BoundParams,
    pub verdict: ConditionVerdict,
    pub rhs: f64,
    pub lhs: f64,
    pub gap: f64,
    pub coefficients: BTreeMap<String, f64>,
    pub dropped: Vec<usize>,
    pub ordering: Vec<usize>,
    /// Level steps used, empty for the baseline.
    pub steps: Vec<Step>,
}

impl BoundReport {
    pub fn applicable(&self) -> bool {
        self.verdict.applicable
    }

    /// The report itself when applicable, otherwise [`Error::NotApplicable`].
    pub fn require_applicable(&self) -> Result<&Self> {
        if self.applicable() {
            Ok(self)
        } else {
            Err(Error::NotApplicable {
                bound: self.bound.to_string(),
                failed: self.verdict.failed(),
            })
        }
    }

    /// Report for a bound that could not be evaluated at all.
    pub fn rejected(
        bound: BoundId,
        params: &BoundParams,
        profile: &CoherenceProfile,
        err: &Error,
    ) -> Self {
        let lhs = profile.lhs(params.alpha);
        Self {
            bound,
            params: params.clone(),
            verdict: ConditionVerdict {
                applicable: false,
                per_condition: vec![Condition {
                    description: err.to_string(),
                    lhs: f64::NAN,
                    rhs: f64::NAN,
                    satisfied: false,
                }],
            },
            rhs: f64::NAN,
            lhs,
            gap: f64::NAN,
            coefficients: BTreeMap::new(),
            dropped: Vec::new(),
            ordering: profile.ordering().to_vec(),
            steps: Vec::new(),
        }
    }
}

impl Serialize for BoundReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BoundReport", 8)?;
        st.serialize_field("bound", &self.bound)?;
        st.serialize_field("applicable", &self.verdict.applicable)?;
        st.serialize_field("conditions", &self.verdict.per_condition)?;
        st.serialize_field("rhs", &self.rhs)?;
        st.serialize_field("lhs", &self.lhs)?;
        st.serialize_field("gap", &self.gap)?;
        st.serialize_field("coefficients", &self.coefficients)?;
        st.serialize_field("dropped", &self.dropped)?;
        st.end()
    }
}

fn require_n(bound: BoundId, profile: &CoherenceProfile, exact3: bool) -> Result<usize> {
    let n = profile.n();
    let ok = if exact3 { n == 3 } else { n >= 3 };
    if !ok {
        return Err(Error::WrongArity {
            bound: bound.as_str(),
            expected: if exact3 {
                "exactly 3 qubits"
            } else {
                "at least 3 qubits"
            },
            n,
        });
    }
    Ok(n)
}

fn check_m(m: usize, max: usize) -> Result<()> {
    if m < 1 || m > max {
        return Err(Error::InvalidM { m, max });
    }
    Ok(())
}

/// Longest prefix of levels whose descending condition holds for `kd`.
fn descending_prefix(profile: &CoherenceProfile, kd: &[f64]) -> usize {
    let slack = crate::config::Config::global().condition_slack;
    profile
        .singles()
        .iter()
        .zip(profile.tails())
        .zip(kd)
        .take_while(|((s, t), k)| *k * *s >= *t - slack)
        .count()
}

fn assemble(
    bound: BoundId,
    params: &BoundParams,
    profile: &CoherenceProfile,
    steps: Vec<Step>,
    outcome: chain::ChainOutcome,
) -> BoundReport {
    let lhs = profile.lhs(params.alpha);
    BoundReport {
        bound,
        params: params.clone(),
        verdict: ConditionVerdict::from_conditions(outcome.conditions),
        rhs: outcome.rhs,
        lhs,
        gap: lhs - outcome.rhs,
        coefficients: outcome.coefficients,
        dropped: outcome.dropped,
        ordering: profile.ordering().to_vec(),
        steps,
    }
}

fn tight_chain(
    bound: BoundId,
    profile: &CoherenceProfile,
    params: &BoundParams,
    steps: Vec<Step>,
    kd: Vec<f64>,
    per_level: bool,
) -> BoundReport {
    let outcome = chain::run(
        profile,
        &ChainSpec {
            family: Family::Tight,
            alpha: params.alpha,
            steps: &steps,
            kd: &kd,
            per_level,
            label: KLabel::KDelta,
        },
    );
    assemble(bound, params, profile, steps, outcome)
}

/// `Σ_n C_n^α`, always applicable.
pub fn baseline_bound(profile: &CoherenceProfile, alpha: f64) -> Result<BoundReport> {
    let params = BoundParams::new(alpha, 1.0, 1.0);
    params.validate(1.0)?;
    let rhs = profile.singles().iter().map(|s| pow(*s, alpha)).sum();
    let lhs = profile.lhs(alpha);
    let coefficients = (1..=profile.n())
        .map(|n| (format!("lambda_{n}"), 1.0))
        .collect();
    Ok(BoundReport {
        bound: BoundId::Baseline4,
        params,
        verdict: ConditionVerdict::from_conditions(Vec::new()),
        rhs,
        lhs,
        gap: lhs - rhs,
        coefficients,
        dropped: Vec::new(),
        ordering: profile.ordering().to_vec(),
        steps: Vec::new(),
    })
}

fn ref_levels(
    scheme: RefScheme,
    params: &BoundParams,
    levels: usize,
) -> Result<(Vec<f64>, bool, KLabel)> {
    let per_level = matches!(params.k, KMode::PerIndex(_)) && scheme != RefScheme::Ref29;
    let ks = params.k.per_level(levels)?;
    Ok(match scheme {
        RefScheme::Ref29 => (vec![1.0; levels], false, KLabel::One),
        RefScheme::Ref30 => (ks, per_level, KLabel::K),
        RefScheme::Ref31 => (
            ks.iter().map(|k| pow(*k, params.delta)).collect(),
            per_level,
            KLabel::KDelta,
        ),
    })
}

/// Comparator bound under an explicit level pattern.
pub fn ref_scheme_bound_with(
    profile: &CoherenceProfile,
    params: &BoundParams,
    scheme: RefScheme,
    steps: &[Step],
) -> Result<BoundReport> {
    params.validate(1.0)?;
    let n = require_n(scheme.id(), profile, false)?;
    if steps.len() != n - 1 {
        return Err(Error::ArityMismatch {
            got: steps.len(),
            expected: n - 1,
        });
    }
    let (kd, per_level, label) = ref_levels(scheme, params, n - 1)?;
    let outcome = chain::run(
        profile,
        &ChainSpec {
            family: Family::Prior,
            alpha: params.alpha,
            steps,
            kd: &kd,
            per_level,
            label,
        },
    );
    Ok(assemble(
        scheme.id(),
        params,
        profile,
        steps.to_vec(),
        outcome,
    ))
}

/// Comparator bound with coefficients `λ_n = B^{n−1}` (n ≤ m),
/// `B^{m+1}` (m < n < N), `B^m` (n = N), where `B = Λ` for the scheme's `K`.
///
/// `m ∈ [1, N−1]`; `m = N − 1` is the all-descending chain. Without `m` the
/// longest descending prefix is used, and for three qubits the
/// ascend-then-descend pattern is tried when that split fails.
pub fn ref_scheme_bound(
    profile: &CoherenceProfile,
    params: &BoundParams,
    scheme: RefScheme,
) -> Result<BoundReport> {
    params.validate(1.0)?;
    let n = require_n(scheme.id(), profile, false)?;
    if let Some(m) = params.m {
        check_m(m, n - 1)?;
        return ref_scheme_bound_with(profile, params, scheme, &Step::split(m, n));
    }
    let (kd, _, _) = ref_levels(scheme, params, n - 1)?;
    let m = descending_prefix(profile, &kd).max(1);
    let split = ref_scheme_bound_with(profile, params, scheme, &Step::split(m, n))?;
    if split.applicable() || n != 3 {
        return Ok(split);
    }
    let hybrid = ref_scheme_bound_with(profile, params, scheme, &Step::ascend_then_descend())?;
    Ok(if hybrid.applicable() { hybrid } else { split })
}

/// All-descending chain with a global `k`:
/// `Σ_n Ω_n Γ^{n−1} C_n^α`, `Ω_n = 1 + C_{n+1..N}/C_n`, `Ω_N = 1`.
///
/// A per-index `k` list is replaced by its maximum.
pub fn thm1_bound(profile: &CoherenceProfile, params: &BoundParams) -> Result<BoundReport> {
    params.validate(2.0)?;
    let n = require_n(BoundId::Thm1, profile, false)?;
    let kd = pow(params.k.global_equivalent(), params.delta);
    Ok(tight_chain(
        BoundId::Thm1,
        profile,
        params,
        Step::split(n - 1, n),
        vec![kd; n - 1],
        false,
    ))
}

fn auto_m(profile: &CoherenceProfile, kd: &[f64]) -> usize {
    let n = profile.n();
    descending_prefix(profile, kd).clamp(1, n - 2)
}

/// Descending prefix of length `m`, then ascending, global `k`:
/// `Σ_{n≤m} Γ^{n−1}Ω_n C_n^α + Γ^{m+1} C_{m+1}^α
///  + Γ^{m+1} Σ_{n=m+2}^{N−1} Υ_{m+1}…Υ_{n−1} C_n^α + Γ^m Υ_{m+1}…Υ_{N−1} C_N^α`.
///
/// Without `m`, the longest descending prefix clamped to `[1, N−2]`.
pub fn thm2_bound(profile: &CoherenceProfile, params: &BoundParams) -> Result<BoundReport> {
    params.validate(2.0)?;
    let n = require_n(BoundId::Thm2, profile, false)?;
    let kd = vec![pow(params.k.global_equivalent(), params.delta); n - 1];
    let m = match params.m {
        Some(m) => {
            check_m(m, n - 2)?;
            m
        }
        None => auto_m(profile, &kd),
    };
    Ok(tight_chain(
        BoundId::Thm2,
        profile,
        params,
        Step::split(m, n),
        kd,
        false,
    ))
}

/// Three qubits with `C_1 ≤ k^δ C_{23}` and `k^δ C_2 ≥ C_3`:
/// `(1 + C_1/C_23)(1 + C_3/C_2) C_2^α + (1 + C_1/C_23) Γ C_3^α + Γ C_1^α`.
///
/// A two-entry per-index list uses `k_1` for the first split and `k_2` for
/// the second.
pub fn cor1_bound(profile: &CoherenceProfile, params: &BoundParams) -> Result<BoundReport> {
    params.validate(2.0)?;
    require_n(BoundId::Cor1, profile, true)?;
    let per_level = matches!(params.k, KMode::PerIndex(_));
    let kd = params
        .k
        .per_level(2)?
        .iter()
        .map(|k| pow(*k, params.delta))
        .collect();
    Ok(tight_chain(
        BoundId::Cor1,
        profile,
        params,
        Step::ascend_then_descend(),
        kd,
        per_level,
    ))
}

/// All-descending chain with per-level `k_n`:
/// `Σ_n Ω_n Γ_0 Γ_1 … Γ_{n−1} C_n^α`, `Γ_0 = 1`.
///
/// A global `k` is spread over every level.
pub fn thm3_bound(profile: &CoherenceProfile, params: &BoundParams) -> Result<BoundReport> {
    params.validate(2.0)?;
    let n = require_n(BoundId::Thm3, profile, false)?;
    let kd = params
        .k
        .per_level(n - 1)?
        .iter()
        .map(|k| pow(*k, params.delta))
        .collect();
    Ok(tight_chain(
        BoundId::Thm3,
        profile,
        params,
        Step::split(n - 1, n),
        kd,
        true,
    ))
}

/// Descending prefix `m` then ascending, per-level `k_n`. Reduces to
/// [`thm2_bound`] when all `k_n` are equal.
pub fn thm4_bound(profile: &CoherenceProfile, params: &BoundParams) -> Result<BoundReport> {
    params.validate(2.0)?;
    let n = require_n(BoundId::Thm4, profile, false)?;
    let kd: Vec<f64> = params
        .k
        .per_level(n - 1)?
        .iter()
        .map(|k| pow(*k, params.delta))
        .collect();
    let m = match params.m {
        Some(m) => {
            check_m(m, n - 2)?;
            m
        }
        None => auto_m(profile, &kd),
    };
    Ok(tight_chain(
        BoundId::Thm4,
        profile,
        params,
        Step::split(m, n),
        kd,
        true,
    ))
}

/// Dispatch on `bound`.
pub fn evaluate(
    profile: &CoherenceProfile,
    bound: BoundId,
    params: &BoundParams,
) -> Result<BoundReport> {
    match bound {
        BoundId::Baseline4 => baseline_bound(profile, params.alpha),
        BoundId::Ref29 => ref_scheme_bound(profile, params, RefScheme::Ref29),
        BoundId::Ref30 => ref_scheme_bound(profile, params, RefScheme::Ref30),
        BoundId::Ref31 => ref_scheme_bound(profile, params, RefScheme::Ref31),
        BoundId::Thm1 => thm1_bound(profile, params),
        BoundId::Thm2 => thm2_bound(profile, params),
        BoundId::Cor1 => cor1_bound(profile, params),
        BoundId::Thm3 => thm3_bound(profile, params),
        BoundId::Thm4 => thm4_bound(profile, params),
    }
}

/// Like [`evaluate`], but input errors become a rejected report.
pub fn evaluate_or_reject(
    profile: &CoherenceProfile,
    bound: BoundId,
    params: &BoundParams,
) -> BoundReport {
    evaluate(profile, bound, params)
        .unwrap_or_else(|e| BoundReport::rejected(bound, params, profile, &e))
}

/// Sort: applicable reports by `rhs` descending, then the rest; ties by id.
pub fn sort_reports(reports: &mut [BoundReport]) {
    reports.sort_by(|a, b| {
        b.applicable()
            .cmp(&a.applicable())
            .then_with(|| {
                if a.applicable() {
                    b.rhs.total_cmp(&a.rhs)
                } else {
                    std::cmp::Ordering::Equal
                }
            })
            .then_with(|| a.bound.cmp(&b.bound))
    });
}

/// Every bound on one profile, sorted with [`sort_reports`].
pub fn evaluate_profile(profile: &CoherenceProfile, params: &BoundParams) -> Vec<BoundReport> {
    let mut reports: Vec<BoundReport> = BoundId::ALL
        .iter()
        .map(|&b| evaluate_or_reject(profile, b, params))
        .collect();
    sort_reports(&mut reports);
    reports
}

/// Every bound on `rho` under `ordering`.
pub fn evaluate_all(
    rho: &DensityMatrix,
    ordering: &[usize],
    params: &BoundParams,
) -> Result<Vec<BoundReport>> {
    let profile = coherence::profile(rho, ordering)?;
    Ok(evaluate_profile(&profile, params))
}

#[cfg(test)]
mod tests;
