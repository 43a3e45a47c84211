//! Level-by-level expansion shared by every multi-level bound.
//!
//! At level `p` the block `C_{p..N}` is split into its single-qubit part
//! `C_p` and tail `T_p = C_{p+1..N}`, starting from
//! `C_{p..N}^α ≥ (C_p + T_p)^α` and carrying a running factor `f` (1 at
//! level 1). With `K = k^δ` for the level:
//!
//! | step | condition | tight family (Γ) | prior family (Λ) |
//! |------|-----------|------------------|------------------|
//! | descend | `T ≤ K·C_p` | `C_p` gets `f·Ω_p`, tail carries `f·Γ` | `C_p` gets `f`, tail carries `f·Λ` |
//! | ascend  | `C_p ≤ K·T` | `C_p` gets `f·Γ`, tail carries `f·Υ_p` | `C_p` gets `f·Λ`, tail carries `f` |
//!
//! with `Ω_p = 1 + T/C_p` and `Υ_p = 1 + C_p/T`. The last single receives
//! the final factor.
//!
//! Zero coherences:
//! - tight family, zero single at a level: the term is omitted and the tail
//!   carries `f` unchanged (one fewer power of Γ for every later term); the
//!   level's condition is waived because `C_{p..N}^α ≥ T^α` holds outright;
//! - zero tail: the chain stops at that level and every later term is
//!   omitted.

use std::collections::BTreeMap;

use super::{Condition, Step};
use crate::coherence::{is_zero, CoherenceProfile};
use crate::config::Config;
use crate::scalar_ineq::{gamma_from_kd, lambda_from_kd, pow};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Family {
    Tight,
    Prior,
}

/// How the level parameter appears in condition descriptions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum KLabel {
    KDelta,
    K,
    One,
}

pub(crate) struct ChainSpec<'a> {
    pub family: Family,
    pub alpha: f64,
    pub steps: &'a [Step],
    /// `K = k^δ` per level.
    pub kd: &'a [f64],
    /// Record one coefficient per level instead of a single shared one.
    pub per_level: bool,
    pub label: KLabel,
}

#[derive(Debug, Clone)]
pub(crate) struct ChainOutcome {
    pub conditions: Vec<Condition>,
    pub coefficients: BTreeMap<String, f64>,
    pub dropped: Vec<usize>,
    pub rhs: f64,
}

fn tail_name(p: usize, n: usize) -> String {
    if p + 1 == n - 1 {
        format!("C_{}", n)
    } else {
        format!("C_{{{}..{}}}", p + 2, n)
    }
}

fn k_text(label: KLabel, level: usize, per_level: bool) -> String {
    let sub = if per_level {
        format!("_{}", level + 1)
    } else {
        String::new()
    };
    match label {
        KLabel::KDelta => format!("k{sub}^δ·"),
        KLabel::K => format!("k{sub}·"),
        KLabel::One => String::new(),
    }
}

pub(crate) fn run(profile: &CoherenceProfile, spec: &ChainSpec<'_>) -> ChainOutcome {
    let n = profile.n();
    debug_assert_eq!(spec.steps.len(), n - 1);
    debug_assert_eq!(spec.kd.len(), n - 1);
    let slack = Config::global().condition_slack;
    let singles = profile.singles();
    let tails = profile.tails();

    let mut weights = vec![0.0; n];
    let mut conditions = Vec::with_capacity(n - 1);
    let mut coefficients = BTreeMap::new();
    let mut dropped = Vec::new();
    let mut factor = 1.0;
    let mut terminated = false;

    let coeff_name = match spec.family {
        Family::Tight => "Gamma",
        Family::Prior => "Lambda",
    };

    for (p, (&step, &kd)) in spec.steps.iter().zip(spec.kd).enumerate() {
        let (s, t) = (singles[p], tails[p]);
        let single = format!("C_{}", p + 1);
        let tail = tail_name(p, n);
        let kt = k_text(spec.label, p, spec.per_level);

        if terminated {
            conditions.push(Condition {
                description: format!("{single}: skipped, an earlier tail is zero"),
                lhs: s,
                rhs: 0.0,
                satisfied: true,
            });
            continue;
        }

        let coeff = match spec.family {
            Family::Tight => gamma_from_kd(kd, spec.alpha),
            Family::Prior => lambda_from_kd(kd, spec.alpha),
        };
        if spec.per_level {
            coefficients.insert(format!("{coeff_name}_{}", p + 1), coeff);
        } else {
            coefficients.entry(coeff_name.to_string()).or_insert(coeff);
        }

        if spec.family == Family::Tight && is_zero(s) && !is_zero(t) {
            conditions.push(Condition {
                description: format!("{single} = 0: term omitted, condition waived"),
                lhs: s,
                rhs: 0.0,
                satisfied: true,
            });
            dropped.push(p + 1);
            continue;
        }

        let (description, lhs, rhs, satisfied) = match step {
            Step::Descend => (
                format!("{kt}{single} ≥ {tail}"),
                kd * s,
                t,
                kd * s >= t - slack,
            ),
            Step::Ascend => (
                format!("{single} ≤ {kt}{tail}"),
                s,
                kd * t,
                s <= kd * t + slack,
            ),
        };
        conditions.push(Condition {
            satisfied,
            description,
            lhs,
            rhs,
        });

        if is_zero(t) && (step == Step::Descend || is_zero(s)) {
            weights[p] = if is_zero(s) { 0.0 } else { factor };
            if spec.family == Family::Tight && step == Step::Descend {
                coefficients.insert(format!("Omega_{}", p + 1), 1.0);
            }
            terminated = true;
            continue;
        }

        match (spec.family, step) {
            (Family::Tight, Step::Descend) => {
                let omega = 1.0 + t / s;
                coefficients.insert(format!("Omega_{}", p + 1), omega);
                weights[p] = factor * omega;
                factor *= coeff;
            }
            (Family::Tight, Step::Ascend) => {
                let upsilon = 1.0 + s / t;
                coefficients.insert(format!("Upsilon_{}", p + 1), upsilon);
                weights[p] = factor * coeff;
                factor *= upsilon;
            }
            (Family::Prior, Step::Descend) => {
                weights[p] = factor;
                factor *= coeff;
            }
            (Family::Prior, Step::Ascend) => {
                weights[p] = factor * coeff;
            }
        }
    }
    if !terminated {
        weights[n - 1] = factor;
    }
    for (i, w) in weights.iter().enumerate() {
        coefficients.insert(format!("lambda_{}", i + 1), *w);
    }
    let rhs = weights
        .iter()
        .zip(singles)
        .filter(|(w, _)| **w != 0.0)
        .map(|(w, s)| w * pow(*s, spec.alpha))
        .sum();
    ChainOutcome {
        conditions,
        coefficients,
        dropped,
        rhs,
    }
}
