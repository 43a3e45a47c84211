//! Scalar power inequalities and the amplification coefficients built on them.
//!
//! With `K = k^δ ∈ (0, 1]`:
//!
//! - `Γ(K, α) = ((1+K)^α − K − 1) / K^α`, the coefficient of the tighter bounds;
//! - `Λ(K, α) = ((1+K)^α − 1) / K^α`, the coefficient of the comparator bounds.
//!
//! `Λ − Γ = K^{1−α}` exactly. Every check returns a signed slack (positive
//! means the inequality holds with room to spare) so callers can see how close
//! a point came to violation.
//!
//! Powers use `powi` when the exponent is an integer of modest size and
//! `powf` (exp/log) otherwise; `(1+K)^α − 1` goes through `expm1` for small
//! `K`.

use serde::Serialize;

use crate::config::Config;
use crate::{Error, Result};

/// `base^exp` with an integer fast path.
#[inline]
pub fn pow(base: f64, exp: f64) -> f64 {
    if exp.fract() == 0.0 && exp.abs() <= 64.0 {
        base.powi(exp as i32)
    } else {
        base.powf(exp)
    }
}

/// `(1+K)^α − 1`, via `expm1`/`ln_1p` for small `K` where the subtraction
/// would cancel.
#[inline]
fn grow_minus_one(kd: f64, alpha: f64) -> f64 {
    if kd < 0.5 {
        (alpha * kd.ln_1p()).exp_m1()
    } else {
        pow(1.0 + kd, alpha) - 1.0
    }
}

/// `((1+K)^α − K − 1) / K^α`. No domain checks.
#[inline]
pub fn gamma_from_kd(kd: f64, alpha: f64) -> f64 {
    (grow_minus_one(kd, alpha) - kd) / pow(kd, alpha)
}

/// `((1+K)^α − 1) / K^α`. No domain checks.
#[inline]
pub fn lambda_from_kd(kd: f64, alpha: f64) -> f64 {
    grow_minus_one(kd, alpha) / pow(kd, alpha)
}

/// `α`, `k ∈ (0, 1]`, `δ ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalarParams {
    pub alpha: f64,
    pub k: f64,
    pub delta: f64,
}

impl ScalarParams {
    /// Validates `k` and `δ`; `α` is checked per operation.
    pub fn new(alpha: f64, k: f64, delta: f64) -> Result<Self> {
        let p = Self { alpha, k, delta };
        p.check(1.0)?;
        Ok(p)
    }

    fn check(&self, min_alpha: f64) -> Result<()> {
        if !self.alpha.is_finite() || self.alpha < min_alpha {
            return Err(Error::DomainError(format!(
                "alpha = {} must be >= {min_alpha}",
                self.alpha
            )));
        }
        if !self.k.is_finite() || self.k <= 0.0 || self.k > 1.0 {
            return Err(Error::DomainError(format!("k = {} outside (0, 1]", self.k)));
        }
        if !self.delta.is_finite() || self.delta < 1.0 {
            return Err(Error::DomainError(format!(
                "delta = {} must be >= 1",
                self.delta
            )));
        }
        Ok(())
    }

    /// `k^δ`.
    pub fn kd(&self) -> f64 {
        pow(self.k, self.delta)
    }
}

/// Signed slack of one inequality at one point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Slack {
    pub value: f64,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

impl Slack {
    fn new(value: f64) -> Self {
        Self {
            value,
            holds: value >= -Config::global().scalar_slack,
            warning: None,
        }
    }
}

fn check_unit_interval(name: &str, x: f64, upper: f64) -> Result<()> {
    // Admit rounding at the saturation point x = k^δ.
    let limit = upper * (1.0 + 1e-12) + 1e-15;
    if !x.is_finite() || x < 0.0 || x > limit {
        return Err(Error::DomainError(format!(
            "{name} = {x} outside [0, {upper}]"
        )));
    }
    Ok(())
}

/// Γ for validated parameters, `α ≥ 2`.
pub fn gamma_coeff(p: &ScalarParams) -> Result<f64> {
    p.check(2.0)?;
    Ok(gamma_from_kd(p.kd(), p.alpha))
}

/// Λ for validated parameters, `α ≥ 1`.
pub fn lambda_coeff(p: &ScalarParams) -> Result<f64> {
    p.check(1.0)?;
    Ok(lambda_from_kd(p.kd(), p.alpha))
}

/// `(1+x)^{α−1} − 1 − (α−1)x` for `x ∈ [0, 1]`, `α ≥ 2`.
pub fn bernoulli_slack(x: f64, alpha: f64) -> Result<Slack> {
    check_unit_interval("x", x, 1.0)?;
    if !alpha.is_finite() || alpha < 2.0 {
        return Err(Error::DomainError(format!("alpha = {alpha} must be >= 2")));
    }
    Ok(Slack::new(
        pow(1.0 + x, alpha - 1.0) - 1.0 - (alpha - 1.0) * x,
    ))
}

/// `(1+x)^α − 1 − x − Γ x^α` for `0 ≤ x ≤ k^δ`, `α ≥ 2`.
///
/// Zero at both ends of the interval; `x > k^δ` is a domain error because it
/// means a condition was misapplied.
pub fn gamma_ineq_slack(x: f64, p: &ScalarParams) -> Result<Slack> {
    let gamma = gamma_coeff(p)?;
    check_unit_interval("x", x, p.kd())?;
    if x == 0.0 {
        return Ok(Slack::new(0.0));
    }
    Ok(Slack::new(
        pow(1.0 + x, p.alpha) - 1.0 - x - gamma * pow(x, p.alpha),
    ))
}

/// `(1+t)^α − 1 − Λ t^α` for `t ∈ [0, 1]`, `α ≥ 1`.
///
/// The inequality is only guaranteed for `t ≤ k^δ`; beyond that the slack is
/// still reported but flagged with a warning.
pub fn lambda_ineq_slack(t: f64, p: &ScalarParams) -> Result<Slack> {
    let lambda = lambda_coeff(p)?;
    check_unit_interval("t", t, 1.0)?;
    if t == 0.0 {
        return Ok(Slack::new(0.0));
    }
    let mut s = Slack::new(pow(1.0 + t, p.alpha) - 1.0 - lambda * pow(t, p.alpha));
    let kd = p.kd();
    if t > kd * (1.0 + 1e-12) {
        s.warning = Some(format!("t = {t} exceeds k^delta = {kd}; not guaranteed"));
    }
    Ok(s)
}

/// `x + Γx^α − Λx^α` for `0 < x ≤ k^δ`, `α ≥ 2`.
///
/// Non-negative margin means the single-step expansion with Γ is at least as
/// large as the one with Λ. Equals zero at `x = k^δ`.
pub fn dominance_margin(x: f64, p: &ScalarParams) -> Result<Slack> {
    let gamma = gamma_coeff(p)?;
    let lambda = lambda_from_kd(p.kd(), p.alpha);
    check_unit_interval("x", x, p.kd())?;
    if x == 0.0 {
        return Err(Error::DomainError("dominance margin needs x > 0".into()));
    }
    let xa = pow(x, p.alpha);
    Ok(Slack::new(x + gamma * xa - lambda * xa))
}
