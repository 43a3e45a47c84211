//! Parameter grids over one coherence profile.
//!
//! A sweep varies one or two of α, `k`, `k_1` and δ, evaluates a list of
//! bounds at every grid point and tabulates their `rhs`, the common `lhs`,
//! every pairwise difference and the applicability flags. Rows come out in
//! grid order (first axis outermost) whatever the execution mode.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bounds::{evaluate, BoundId, BoundParams, KMode};
use crate::coherence::CoherenceProfile;
use crate::exec::Execution;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AxisName {
    Alpha,
    K,
    /// First per-level `k`; the other levels keep the fixed values.
    K1,
    Delta,
}

impl AxisName {
    pub fn as_str(self) -> &'static str {
        match self {
            AxisName::Alpha => "alpha",
            AxisName::K => "k",
            AxisName::K1 => "k1",
            AxisName::Delta => "delta",
        }
    }
}

impl FromStr for AxisName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alpha" => Ok(AxisName::Alpha),
            "k" => Ok(AxisName::K),
            "k1" => Ok(AxisName::K1),
            "delta" => Ok(AxisName::Delta),
            other => Err(Error::DomainError(format!(
                "unknown axis {other:?} (expected alpha, k, k1 or delta)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Axis {
    pub name: AxisName,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Axis {
    pub fn new(name: AxisName, min: f64, max: f64, steps: usize) -> Result<Self> {
        let axis = Self {
            name,
            min,
            max,
            steps,
        };
        axis.validate()?;
        Ok(axis)
    }

    fn validate(&self) -> Result<()> {
        let name = self.name.as_str();
        if self.steps < 2 {
            return Err(Error::DomainError(format!(
                "axis {name}: steps must be >= 2"
            )));
        }
        if !(self.min.is_finite() && self.max.is_finite() && self.min < self.max) {
            return Err(Error::DomainError(format!("axis {name}: need min < max")));
        }
        let ok = match self.name {
            AxisName::Alpha => self.min >= 1.0,
            AxisName::K | AxisName::K1 => self.min > 0.0 && self.max <= 1.0,
            AxisName::Delta => self.min >= 1.0,
        };
        if !ok {
            return Err(Error::DomainError(format!(
                "axis {name}: range [{}, {}] outside the parameter domain",
                self.min, self.max
            )));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let last = self.steps - 1;
        (0..self.steps)
            .map(|i| {
                if i == last {
                    self.max
                } else {
                    self.min + (self.max - self.min) * i as f64 / last as f64
                }
            })
            .collect()
    }
}

/// `name:min:max:steps`.
impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [name, min, max, steps] = parts.as_slice() else {
            return Err(Error::DomainError(format!(
                "axis {s:?}: expected name:min:max:steps"
            )));
        };
        let num = |v: &str| {
            v.parse::<f64>()
                .map_err(|_| Error::DomainError(format!("axis {s:?}: bad number {v:?}")))
        };
        let steps = steps
            .parse::<usize>()
            .map_err(|_| Error::DomainError(format!("axis {s:?}: bad step count {steps:?}")))?;
        Axis::new(name.parse()?, num(min)?, num(max)?, steps)
    }
}

/// A bound with optional per-bound overrides, written `Cor1` or
/// `Ref30:delta=1,k=0.9`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundSpec {
    pub label: String,
    pub id: BoundId,
    pub delta: Option<f64>,
    pub k: Option<f64>,
    pub m: Option<usize>,
}

impl BoundSpec {
    pub fn plain(id: BoundId) -> Self {
        Self {
            label: id.to_string(),
            id,
            delta: None,
            k: None,
            m: None,
        }
    }
}

impl fmt::Display for BoundSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

impl FromStr for BoundSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (id, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut spec = BoundSpec::plain(id.parse()?);
        spec.label = s.to_string();
        for kv in rest.split(',').filter(|kv| !kv.is_empty()) {
            let (key, value) = kv.split_once('=').ok_or_else(|| {
                Error::DomainError(format!("bound {s:?}: expected key=value, got {kv:?}"))
            })?;
            let bad = || Error::DomainError(format!("bound {s:?}: bad value {value:?} for {key}"));
            match key {
                "delta" => spec.delta = Some(value.parse().map_err(|_| bad())?),
                "k" => spec.k = Some(value.parse().map_err(|_| bad())?),
                "m" => spec.m = Some(value.parse().map_err(|_| bad())?),
                _ => {
                    return Err(Error::DomainError(format!(
                        "bound {s:?}: unknown key {key:?}"
                    )))
                }
            }
        }
        Ok(spec)
    }
}

/// Grid definition. `alpha`, `k` and `delta` hold the values off the axes;
/// `fixed_kn`, when present, gives the per-level `k` list that a `k1` axis
/// edits (otherwise every level uses the fixed global `k`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSpec {
    pub axes: Vec<Axis>,
    pub alpha: f64,
    pub k: f64,
    pub delta: f64,
    pub fixed_kn: Option<Vec<f64>>,
    pub bounds: Vec<BoundSpec>,
}

impl SweepSpec {
    pub fn validate(&self, profile: &CoherenceProfile) -> Result<()> {
        if self.axes.is_empty() || self.axes.len() > 2 {
            return Err(Error::DomainError(format!(
                "a sweep needs 1 or 2 axes, got {}",
                self.axes.len()
            )));
        }
        for axis in &self.axes {
            axis.validate()?;
        }
        if self.axes.len() == 2 && self.axes[0].name == self.axes[1].name {
            return Err(Error::DomainError("the two axes must differ".into()));
        }
        if self.bounds.is_empty() {
            return Err(Error::DomainError(
                "a sweep needs at least one bound".into(),
            ));
        }
        let min_alpha = self
            .axes
            .iter()
            .find(|a| a.name == AxisName::Alpha)
            .map_or(self.alpha, |a| a.min);
        for b in &self.bounds {
            if min_alpha < b.id.min_alpha() {
                return Err(Error::DomainError(format!(
                    "{} needs alpha >= {}, sweep reaches {min_alpha}",
                    b.label,
                    b.id.min_alpha()
                )));
            }
        }
        if let Some(kn) = &self.fixed_kn {
            if kn.len() + 1 != profile.n() {
                return Err(Error::ArityMismatch {
                    got: kn.len(),
                    expected: profile.n() - 1,
                });
            }
        }
        // Fixed parameters are checked through one representative point.
        let grid = self.grid();
        for point in [grid.first(), grid.last()].into_iter().flatten() {
            for b in &self.bounds {
                self.params_at(point, b, profile.n())
                    .validate(b.id.min_alpha())?;
            }
        }
        Ok(())
    }

    fn grid(&self) -> Vec<Vec<f64>> {
        let mut points = vec![Vec::new()];
        for axis in &self.axes {
            let values = axis.values();
            points = points
                .into_iter()
                .flat_map(|p| {
                    values.iter().map(move |&v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        points
    }

    fn params_at(&self, point: &[f64], bound: &BoundSpec, n: usize) -> BoundParams {
        let (mut alpha, mut k, mut delta, mut k1) = (self.alpha, self.k, self.delta, None);
        for (axis, &v) in self.axes.iter().zip(point) {
            match axis.name {
                AxisName::Alpha => alpha = v,
                AxisName::K => k = v,
                AxisName::K1 => k1 = Some(v),
                AxisName::Delta => delta = v,
            }
        }
        if let Some(d) = bound.delta {
            delta = d;
        }
        if let Some(bk) = bound.k {
            k = bk;
        }
        let levels = n.saturating_sub(1).max(1);
        let kmode = match (&self.fixed_kn, k1) {
            (Some(kn), k1) => {
                let mut kn = kn.clone();
                if let Some(v) = k1 {
                    kn[0] = v;
                }
                KMode::PerIndex(kn)
            }
            (None, Some(v)) => {
                let mut kn = vec![k; levels];
                kn[0] = v;
                KMode::PerIndex(kn)
            }
            (None, None) => KMode::Global(k),
        };
        BoundParams {
            alpha,
            delta,
            k: kmode,
            m: bound.m,
        }
    }
}

/// One grid point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub axes: Vec<f64>,
    /// Formula value per bound; NaN when the bound cannot be evaluated.
    pub rhs: Vec<f64>,
    pub lhs: f64,
    /// `rhs[i] − rhs[j]` for `i < j`, in row-major pair order.
    pub diffs: Vec<f64>,
    pub applicable: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub header: Vec<String>,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    /// Rows as strings; floats use the shortest representation that parses
    /// back to the same value.
    pub fn records(&self) -> impl Iterator<Item = Vec<String>> + '_ {
        self.rows.iter().map(|r| {
            r.axes
                .iter()
                .chain(&r.rhs)
                .chain(std::iter::once(&r.lhs))
                .chain(&r.diffs)
                .map(|v| v.to_string())
                .chain(r.applicable.iter().map(|a| a.to_string()))
                .collect()
        })
    }

    pub fn column(&self, name: &str) -> Option<Vec<String>> {
        let idx = self.header.iter().position(|h| h == name)?;
        Some(self.records().map(|r| r[idx].clone()).collect())
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

/// Columns: axis names, `rhs:<bound>` per bound, `lhs`, `diff:<a>-<b>` for
/// each pair, `applicable:<bound>` per bound.
pub fn header(spec: &SweepSpec) -> Vec<String> {
    let labels: Vec<&str> = spec.bounds.iter().map(|b| b.label.as_str()).collect();
    spec.axes
        .iter()
        .map(|a| a.name.as_str().to_string())
        .chain(labels.iter().map(|l| format!("rhs:{l}")))
        .chain(std::iter::once("lhs".to_string()))
        .chain(pairs(labels.len()).map(|(i, j)| format!("diff:{}-{}", labels[i], labels[j])))
        .chain(labels.iter().map(|l| format!("applicable:{l}")))
        .collect()
}

pub fn run_sweep(
    profile: &CoherenceProfile,
    spec: &SweepSpec,
    exec: Execution,
) -> Result<SweepTable> {
    spec.validate(profile)?;
    let grid = spec.grid();
    let rows = exec.map_slice(&grid, |point| {
        let mut rhs = Vec::with_capacity(spec.bounds.len());
        let mut applicable = Vec::with_capacity(spec.bounds.len());
        let mut alpha = spec.alpha;
        for b in &spec.bounds {
            let params = spec.params_at(point, b, profile.n());
            alpha = params.alpha;
            match evaluate(profile, b.id, &params) {
                Ok(r) => {
                    rhs.push(r.rhs);
                    applicable.push(r.applicable());
                }
                Err(_) => {
                    rhs.push(f64::NAN);
                    applicable.push(false);
                }
            }
        }
        let diffs = pairs(rhs.len()).map(|(i, j)| rhs[i] - rhs[j]).collect();
        SweepRow {
            axes: point.clone(),
            rhs,
            lhs: profile.lhs(alpha),
            diffs,
            applicable,
        }
    });
    Ok(SweepTable {
        header: header(spec),
        rows,
    })
}
