//! Grid sweeps of the scalar inequalities.

use serde::{Deserialize, Serialize};

use super::VerifySummary;
use crate::config::Config;
use crate::exec::Execution;
use crate::scalar_ineq::{
    bernoulli_slack, dominance_margin, gamma_ineq_slack, lambda_ineq_slack, ScalarParams, Slack,
};
use crate::{Error, Result};

/// Points per axis.
///
/// The Bernoulli inequality is swept over `(x, α) ∈ [0,1]×[2,6]`; the Γ and Λ
/// inequalities and the dominance margin over
/// `x ∈ [0, k^δ]`, `k ∈ (0, 1]`, `α ∈ [2, 6]` for each listed δ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub bernoulli_x: usize,
    pub bernoulli_alpha: usize,
    pub x: usize,
    pub k: usize,
    pub alpha: usize,
    pub deltas: Vec<f64>,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            bernoulli_x: 200,
            bernoulli_alpha: 200,
            x: 50,
            k: 50,
            alpha: 20,
            deltas: vec![1.0, 2.0, 3.0],
        }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        let axes = [
            self.bernoulli_x,
            self.bernoulli_alpha,
            self.x,
            self.k,
            self.alpha,
        ];
        if axes.iter().any(|&d| d < 10) {
            return Err(Error::DomainError(
                "grid densities must be >= 10 per axis".into(),
            ));
        }
        if self.deltas.is_empty() || self.deltas.iter().any(|d| !d.is_finite() || *d < 1.0) {
            return Err(Error::DomainError("grid deltas must be >= 1".into()));
        }
        Ok(())
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> + Clone {
    (0..n).map(move |i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
}

fn record(
    summary: &mut VerifySummary,
    check: &str,
    slack: Result<Slack>,
    inputs: impl FnOnce() -> String,
) {
    match slack {
        Ok(s) => summary.record(check, s.value, inputs),
        Err(e) => summary.record(check, f64::NAN, || format!("{}: {e}", inputs())),
    }
}

/// Sweeps every scalar inequality and its saturation points.
///
/// Check ids: `bernoulli`, `gamma_ineq`, `lambda_ineq`, `dominance`, and
/// `saturation` for the points where an inequality is an equality (there the
/// recorded slack is `−|value|`).
pub fn inequality_grid_verify(spec: &GridSpec, exec: Execution) -> Result<VerifySummary> {
    spec.validate()?;
    let tol = Config::global().scalar_slack;

    let bernoulli_alphas: Vec<f64> = linspace(2.0, 6.0, spec.bernoulli_alpha).collect();
    let bernoulli = exec.map_slice(&bernoulli_alphas, |&alpha| {
        let mut s = VerifySummary::new(tol);
        for x in linspace(0.0, 1.0, spec.bernoulli_x) {
            record(&mut s, "bernoulli", bernoulli_slack(x, alpha), || {
                format!("x={x}, alpha={alpha}")
            });
        }
        s
    });

    let ks: Vec<f64> = (1..=spec.k).map(|i| i as f64 / spec.k as f64).collect();
    let cells: Vec<(f64, f64)> = spec
        .deltas
        .iter()
        .flat_map(|&d| ks.iter().map(move |&k| (k, d)))
        .collect();
    let scalar = exec.map_slice(&cells, |&(k, delta)| {
        let mut s = VerifySummary::new(tol);
        for alpha in linspace(2.0, 6.0, spec.alpha) {
            let p = match ScalarParams::new(alpha, k, delta) {
                Ok(p) => p,
                Err(e) => {
                    s.record("params", f64::NAN, || e.to_string());
                    continue;
                }
            };
            let kd = p.kd();
            let at = |x: f64| move || format!("x={x}, alpha={alpha}, k={k}, delta={delta}");
            for (j, x) in linspace(0.0, kd, spec.x).enumerate() {
                let x = if j + 1 == spec.x { kd } else { x };
                record(&mut s, "gamma_ineq", gamma_ineq_slack(x, &p), at(x));
                record(&mut s, "lambda_ineq", lambda_ineq_slack(x, &p), at(x));
                if x > 0.0 {
                    record(&mut s, "dominance", dominance_margin(x, &p), at(x));
                }
            }
            saturation(&mut s, &p, alpha, k, delta);
        }
        s
    });

    let mut summary = VerifySummary::merge_all(tol, bernoulli.into_iter().chain(scalar));
    let mut pinned = VerifySummary::new(tol);
    for alpha in [2.0, 3.0, 4.5] {
        record(
            &mut pinned,
            "saturation",
            bernoulli_slack(0.0, alpha).map(abs_slack),
            || format!("bernoulli x=0, alpha={alpha}"),
        );
    }
    record(
        &mut pinned,
        "saturation",
        bernoulli_slack(1.0, 2.0).map(abs_slack),
        || "bernoulli x=1, alpha=2".into(),
    );
    summary = summary.merge(pinned);
    Ok(summary)
}

fn abs_slack(mut s: Slack) -> Slack {
    s.value = -s.value.abs();
    s
}

fn saturation(s: &mut VerifySummary, p: &ScalarParams, alpha: f64, k: f64, delta: f64) {
    let kd = p.kd();
    let at = |what: &'static str, x: f64| {
        move || format!("{what} x={x}, alpha={alpha}, k={k}, delta={delta}")
    };
    record(
        s,
        "saturation",
        gamma_ineq_slack(0.0, p).map(abs_slack),
        at("gamma", 0.0),
    );
    record(
        s,
        "saturation",
        gamma_ineq_slack(kd, p).map(abs_slack),
        at("gamma", kd),
    );
    record(
        s,
        "saturation",
        lambda_ineq_slack(0.0, p).map(abs_slack),
        at("lambda", 0.0),
    );
    record(
        s,
        "saturation",
        lambda_ineq_slack(kd, p).map(abs_slack),
        at("lambda", kd),
    );
    record(
        s,
        "saturation",
        dominance_margin(kd, p).map(abs_slack),
        at("dominance", kd),
    );
}
