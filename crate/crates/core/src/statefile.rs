//! JSON state files.
//!
//! ```json
//! {"n_qubits": 1, "kind": "pure", "amplitudes": [[0.7071067811865476, 0.0], [0.7071067811865476, 0.0]]}
//! {"n_qubits": 1, "kind": "density", "entries": [[[0.5, 0.0], [0.5, 0.0]], [[0.5, 0.0], [0.5, 0.0]]]}
//! {"kind": "schmidt3", "lambda": [1.0, 0.0, 0.0, 0.0, 0.0], "phi": 0.0}
//! {"kind": "product", "factors": [{"kind": "pure", "amplitudes": [[1.0, 0.0], [0.0, 0.0]]}, ...]}
//! ```
//!
//! Complex numbers are `[re, im]` pairs; matrices are row-major lists of rows.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::qstate::{self, DensityMatrix, PureState, SchmidtSpec};
use crate::{Error, Result};

/// Parsed, not yet validated, state description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum StateSpec {
    #[serde(rename = "pure")]
    Pure {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n_qubits: Option<usize>,
        amplitudes: Vec<[f64; 2]>,
    },
    #[serde(rename = "density")]
    Density {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n_qubits: Option<usize>,
        entries: Vec<Vec<[f64; 2]>>,
    },
    #[serde(rename = "schmidt3")]
    Schmidt3 { lambda: [f64; 5], phi: f64 },
    #[serde(rename = "product")]
    Product { factors: Vec<StateSpec> },
}

/// A validated state from a file.
#[derive(Debug, Clone, PartialEq)]
pub enum LoadedState {
    Pure(PureState),
    Mixed(DensityMatrix),
}

impl LoadedState {
    pub fn n_qubits(&self) -> usize {
        match self {
            LoadedState::Pure(p) => p.n_qubits(),
            LoadedState::Mixed(m) => m.n_qubits(),
        }
    }

    pub fn density(&self) -> Result<DensityMatrix> {
        match self {
            LoadedState::Pure(p) => qstate::density_of(p),
            LoadedState::Mixed(m) => Ok(m.clone()),
        }
    }

    pub fn as_pure(&self) -> Option<&PureState> {
        match self {
            LoadedState::Pure(p) => Some(p),
            LoadedState::Mixed(_) => None,
        }
    }
}

fn complex(pair: &[f64; 2]) -> Complex64 {
    Complex64::new(pair[0], pair[1])
}

fn check_declared(declared: Option<usize>, actual: usize) -> Result<()> {
    match declared {
        Some(n) if n != actual => Err(Error::StateFile(format!(
            "n_qubits = {n} but the data describes {actual} qubits"
        ))),
        _ => Ok(()),
    }
}

impl StateSpec {
    /// Validate and build the state.
    pub fn build(&self) -> Result<LoadedState> {
        match self {
            StateSpec::Pure {
                n_qubits,
                amplitudes,
            } => {
                let state = qstate::make_pure(amplitudes.iter().map(complex).collect())?;
                check_declared(*n_qubits, state.n_qubits())?;
                Ok(LoadedState::Pure(state))
            }
            StateSpec::Density { n_qubits, entries } => {
                let rows = entries
                    .iter()
                    .map(|row| row.iter().map(complex).collect())
                    .collect();
                let rho = DensityMatrix::from_rows(rows)?;
                check_declared(*n_qubits, rho.n_qubits())?;
                Ok(LoadedState::Mixed(rho))
            }
            StateSpec::Schmidt3 { lambda, phi } => Ok(LoadedState::Pure(qstate::schmidt_state(
                &SchmidtSpec::new(*lambda, *phi)?,
            )?)),
            StateSpec::Product { factors } => {
                if factors.is_empty() {
                    return Err(Error::StateFile("product needs at least one factor".into()));
                }
                let built = factors
                    .iter()
                    .map(StateSpec::build)
                    .collect::<Result<Vec<_>>>()?;
                if built.iter().all(|f| matches!(f, LoadedState::Pure(_))) {
                    let pure: Vec<PureState> = built
                        .into_iter()
                        .filter_map(|f| match f {
                            LoadedState::Pure(p) => Some(p),
                            LoadedState::Mixed(_) => None,
                        })
                        .collect();
                    return Ok(LoadedState::Pure(qstate::product_state(&pure)?));
                }
                let mut iter = built.iter();
                let first = iter.next().map(LoadedState::density).transpose()?;
                let mut acc = first.ok_or(Error::EmptyKeepSet)?;
                for f in iter {
                    acc = qstate::tensor(&acc, &f.density()?)?;
                }
                Ok(LoadedState::Mixed(acc))
            }
        }
    }

    pub fn from_pure(state: &PureState) -> Self {
        StateSpec::Pure {
            n_qubits: Some(state.n_qubits()),
            amplitudes: state.amplitudes().iter().map(|a| [a.re, a.im]).collect(),
        }
    }

    pub fn from_density(rho: &DensityMatrix) -> Self {
        StateSpec::Density {
            n_qubits: Some(rho.n_qubits()),
            entries: rho
                .rows()
                .map(|row| row.iter().map(|a| [a.re, a.im]).collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("state specs always serialise")
    }
}

pub fn parse_str(text: &str) -> Result<StateSpec> {
    serde_json::from_str(text).map_err(|e| Error::StateFile(e.to_string()))
}

/// Read, parse and validate a state file.
pub fn load(path: impl AsRef<Path>) -> Result<LoadedState> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::StateFile(format!("{}: {e}", path.display())))?;
    parse_str(&text)?.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_kind() {
        let pure = parse_str(r#"{"n_qubits": 1, "kind": "pure", "amplitudes": [[1, 0], [0, 0]]}"#)
            .unwrap()
            .build()
            .unwrap();
        assert_eq!(pure.n_qubits(), 1);

        let dens = parse_str(
            r#"{"kind": "density", "entries": [[[0.5, 0], [0.5, 0]], [[0.5, 0], [0.5, 0]]]}"#,
        )
        .unwrap()
        .build()
        .unwrap();
        assert!(matches!(dens, LoadedState::Mixed(_)));

        let s = parse_str(r#"{"kind": "schmidt3", "lambda": [1, 0, 0, 0, 0], "phi": 0.0}"#)
            .unwrap()
            .build()
            .unwrap();
        assert_eq!(s.n_qubits(), 3);

        let prod = parse_str(
            r#"{"kind": "product", "factors": [
                {"kind": "pure", "amplitudes": [[1, 0], [0, 0]]},
                {"kind": "schmidt3", "lambda": [1, 0, 0, 0, 0], "phi": 0.0}]}"#,
        )
        .unwrap()
        .build()
        .unwrap();
        assert_eq!(prod.n_qubits(), 4);
        assert!(prod.as_pure().is_some());
    }

    #[test]
    fn mixed_product_is_a_density() {
        let prod = parse_str(
            r#"{"kind": "product", "factors": [
                {"kind": "pure", "amplitudes": [[1, 0], [0, 0]]},
                {"kind": "density", "entries": [[[0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]]}]}"#,
        )
        .unwrap()
        .build()
        .unwrap();
        assert!(matches!(prod, LoadedState::Mixed(ref m) if m.n_qubits() == 2));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_str("{"), Err(Error::StateFile(_))));
        assert!(parse_str(r#"{"kind": "qutrit"}"#).is_err());
        let wrong_n =
            parse_str(r#"{"n_qubits": 2, "kind": "pure", "amplitudes": [[1, 0], [0, 0]]}"#)
                .unwrap();
        assert!(matches!(wrong_n.build(), Err(Error::StateFile(_))));
        let unnormalised =
            parse_str(r#"{"kind": "pure", "amplitudes": [[1, 0], [1, 0]]}"#).unwrap();
        assert!(matches!(
            unnormalised.build(),
            Err(Error::NormTooFarFromOne { .. })
        ));
    }

    #[test]
    fn json_round_trip_preserves_doubles() {
        let state = qstate::random_pure(3, 9).unwrap();
        let spec = StateSpec::from_pure(&state);
        let back = parse_str(&spec.to_json()).unwrap();
        assert_eq!(back, spec);
        // Already unit norm, so the rescale is by exactly 1 or within an ulp.
        let rebuilt = back.build().unwrap();
        let diff = rebuilt
            .as_pure()
            .unwrap()
            .amplitudes()
            .iter()
            .zip(state.amplitudes())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(diff < 1e-15);
    }
}
