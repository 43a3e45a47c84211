//! Numerical tolerances and size caps.
//!
//! Every module reads its thresholds from one [`Config`]. The defaults are
//! fixed constants; a process may replace them once through
//! [`Config::set_global`] (the CLI does this for `--tolerance`).

use std::sync::RwLock;

/// Structural checks: Hermiticity, unit trace, diagonal sign, trace
/// preservation.
pub const STRUCTURAL_TOL: f64 = 1e-10;
/// Maximum deviation of an input squared norm from 1 that is silently
/// renormalised.
pub const INPUT_NORM_TOL: f64 = 1e-6;
/// Slack allowed on each applicability condition of a bound.
pub const CONDITION_SLACK: f64 = 1e-9;
/// Coherence values below this are exactly zero for term dropping.
pub const ZERO_COHERENCE: f64 = 1e-12;
/// Slack allowed by the scalar inequality verdicts.
pub const SCALAR_SLACK: f64 = 1e-12;
/// Default tolerance for bound validity and superadditivity checks.
pub const VALIDITY_TOL: f64 = 1e-9;
pub const MAX_PURE_QUBITS: usize = 14;
pub const MAX_DENSITY_QUBITS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Config {
    pub structural_tol: f64,
    pub input_norm_tol: f64,
    pub condition_slack: f64,
    pub zero_coherence: f64,
    pub scalar_slack: f64,
    pub validity_tol: f64,
    pub max_pure_qubits: usize,
    pub max_density_qubits: usize,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            structural_tol: STRUCTURAL_TOL,
            input_norm_tol: INPUT_NORM_TOL,
            condition_slack: CONDITION_SLACK,
            zero_coherence: ZERO_COHERENCE,
            scalar_slack: SCALAR_SLACK,
            validity_tol: VALIDITY_TOL,
            max_pure_qubits: MAX_PURE_QUBITS,
            max_density_qubits: MAX_DENSITY_QUBITS,
        }
    }
}

static GLOBAL: RwLock<Option<Config>> = RwLock::new(None);

impl Config {
    /// Snapshot of the process-wide configuration.
    pub fn global() -> Config {
        GLOBAL
            .read()
            .map(|g| g.unwrap_or_default())
            .unwrap_or_default()
    }

    /// Replace the process-wide configuration.
    pub fn set_global(cfg: Config) {
        if let Ok(mut g) = GLOBAL.write() {
            *g = Some(cfg);
        }
    }
}
