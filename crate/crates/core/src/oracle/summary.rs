use std::collections::BTreeMap;

use serde::Serialize;

/// Stored violations are capped; the count is always exact.
pub const MAX_STORED_VIOLATIONS: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub check: String,
    pub inputs: String,
    pub slack: f64,
}

/// Per-bound applicability counts from a validity fuzz.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub evaluated: u64,
    pub applicable: u64,
    pub rejected: u64,
}

impl Tally {
    fn add(&mut self, other: &Tally) {
        self.evaluated += other.evaluated;
        self.applicable += other.applicable;
        self.rejected += other.rejected;
    }
}

/// Outcome of a batch of inequality checks.
///
/// `violations` is non-empty exactly when `worst_slack < −tolerance`.
/// [`VerifySummary::merge`] is associative, so merging per-item summaries in
/// item order gives the same result however the items were scheduled.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifySummary {
    pub tolerance: f64,
    pub checks_run: u64,
    pub violation_count: u64,
    pub violations: Vec<Violation>,
    /// Smallest slack seen; `None` when no check ran.
    pub worst_slack: Option<f64>,
    /// Smallest slack per check id.
    pub worst_by_check: BTreeMap<String, f64>,
    pub tallies: BTreeMap<String, Tally>,
    /// Items that produced no checks at all (e.g. one-qubit states).
    pub degenerate: u64,
}

impl VerifySummary {
    pub fn new(tolerance: f64) -> Self {
        Self {
            tolerance,
            checks_run: 0,
            violation_count: 0,
            violations: Vec::new(),
            worst_slack: None,
            worst_by_check: BTreeMap::new(),
            tallies: BTreeMap::new(),
            degenerate: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    /// Records one check; `inputs` is only rendered for violations.
    pub fn record(&mut self, check: &str, slack: f64, inputs: impl FnOnce() -> String) {
        self.checks_run += 1;
        let failed = slack.is_nan() || slack < -self.tolerance;
        let slack_for_min = if slack.is_nan() {
            f64::NEG_INFINITY
        } else {
            slack
        };
        self.worst_slack = Some(
            self.worst_slack
                .map_or(slack_for_min, |w| w.min(slack_for_min)),
        );
        self.worst_by_check
            .entry(check.to_string())
            .and_modify(|w| *w = w.min(slack_for_min))
            .or_insert(slack_for_min);
        if failed {
            self.violation_count += 1;
            if self.violations.len() < MAX_STORED_VIOLATIONS {
                self.violations.push(Violation {
                    check: check.to_string(),
                    inputs: inputs(),
                    slack,
                });
            }
        }
    }

    pub fn tally(&mut self, bound: &str) -> &mut Tally {
        self.tallies.entry(bound.to_string()).or_default()
    }

    pub fn merge(mut self, other: VerifySummary) -> Self {
        self.checks_run += other.checks_run;
        self.violation_count += other.violation_count;
        let room = MAX_STORED_VIOLATIONS.saturating_sub(self.violations.len());
        self.violations
            .extend(other.violations.into_iter().take(room));
        self.worst_slack = match (self.worst_slack, other.worst_slack) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        for (k, v) in other.worst_by_check {
            self.worst_by_check
                .entry(k)
                .and_modify(|w| *w = w.min(v))
                .or_insert(v);
        }
        for (k, t) in other.tallies {
            self.tallies.entry(k).or_default().add(&t);
        }
        self.degenerate += other.degenerate;
        self
    }

    /// Folds summaries in order.
    pub fn merge_all(tolerance: f64, parts: impl IntoIterator<Item = VerifySummary>) -> Self {
        parts
            .into_iter()
            .fold(VerifySummary::new(tolerance), VerifySummary::merge)
    }
}
