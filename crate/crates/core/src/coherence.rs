//! l1-norm coherence and ordered coherence profiles.

use serde::Serialize;

use crate::config::Config;
use crate::qstate::{partial_trace, DensityMatrix, QubitSubset};
use crate::{Error, Result};

/// `Σ_{i≠j} |ρ_ij|` in the computational basis.
pub fn l1_coherence(rho: &DensityMatrix) -> f64 {
    rho.rows()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, e)| e.norm())
                .sum::<f64>()
        })
        .sum()
}

/// Checks that `ordering` is a permutation of `0..n`.
pub fn validate_ordering(ordering: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    let ok = ordering.len() == n
        && ordering
            .iter()
            .all(|&q| q < n && !std::mem::replace(&mut seen[q], true));
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidPermutation {
            ordering: ordering.to_vec(),
            n,
        })
    }
}

/// Single-qubit and tail coherences for one qubit ordering.
///
/// Position `p` holds the qubit playing the role of the `p+1`-th subsystem.
/// `singles[p]` is the coherence of that qubit's reduced state and
/// `tails[p]` the coherence of the reduced state of positions `p+1..N-1`,
/// so `tails` has `N - 1` entries and `tails[N-2] == singles[N-1]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoherenceProfile {
    ordering: Vec<usize>,
    singles: Vec<f64>,
    tails: Vec<f64>,
    total: f64,
}

impl CoherenceProfile {
    /// Profile from raw numbers, e.g. for synthetic condition regimes.
    ///
    /// The ordering is the identity.
    pub fn from_values(singles: Vec<f64>, tails: Vec<f64>, total: f64) -> Result<Self> {
        let n = singles.len();
        if n == 0 {
            return Err(Error::DomainError(
                "profile needs at least one qubit".into(),
            ));
        }
        if tails.len() != n - 1 {
            return Err(Error::DomainError(format!(
                "{} tails for {n} singles, expected {}",
                tails.len(),
                n - 1
            )));
        }
        if singles
            .iter()
            .chain(&tails)
            .chain(std::iter::once(&total))
            .any(|v| !v.is_finite() || *v < 0.0)
        {
            return Err(Error::DomainError(
                "coherence values must be finite and non-negative".into(),
            ));
        }
        if let (Some(last_tail), Some(last_single)) = (tails.last(), singles.last()) {
            let scale = last_single.abs().max(1.0);
            if (last_tail - last_single).abs() > 1e-9 * scale {
                return Err(Error::DomainError(format!(
                    "last tail {last_tail} differs from last single {last_single}"
                )));
            }
        }
        Ok(Self {
            ordering: (0..n).collect(),
            singles,
            tails,
            total,
        })
    }

    pub fn n(&self) -> usize {
        self.singles.len()
    }

    pub fn ordering(&self) -> &[usize] {
        &self.ordering
    }

    pub fn singles(&self) -> &[f64] {
        &self.singles
    }

    pub fn tails(&self) -> &[f64] {
        &self.tails
    }

    pub fn total(&self) -> f64 {
        self.total
    }

    /// `C_total^α`.
    pub fn lhs(&self, alpha: f64) -> f64 {
        self.total.powf(alpha)
    }

    /// `total − Σ singles`; non-negative for physical states.
    pub fn superadditivity_slack(&self) -> f64 {
        self.total - self.singles.iter().sum::<f64>()
    }
}

/// Profile of `rho` under `ordering`, from reduced density matrices.
pub fn profile(rho: &DensityMatrix, ordering: &[usize]) -> Result<CoherenceProfile> {
    let n = rho.n_qubits();
    validate_ordering(ordering, n)?;
    let reduced = |qubits: &[usize]| -> Result<f64> {
        let keep = QubitSubset::from_unsorted(qubits.to_vec(), n)?;
        Ok(l1_coherence(&partial_trace(rho, &keep)?))
    };
    let singles = ordering
        .iter()
        .map(|&q| reduced(&[q]))
        .collect::<Result<Vec<_>>>()?;
    let tails = (1..n)
        .map(|p| reduced(&ordering[p..]))
        .collect::<Result<Vec<_>>>()?;
    Ok(CoherenceProfile {
        ordering: ordering.to_vec(),
        singles,
        tails,
        total: l1_coherence(rho),
    })
}

/// Profile under the identity ordering.
pub fn identity_profile(rho: &DensityMatrix) -> Result<CoherenceProfile> {
    let ordering: Vec<usize> = (0..rho.n_qubits()).collect();
    profile(rho, &ordering)
}

/// `Π(1 + C(factor)) − 1`: the total coherence of a product of the factors.
pub fn product_coherence_check(factors: &[DensityMatrix]) -> Result<f64> {
    if factors.is_empty() {
        return Err(Error::DomainError("need at least one factor".into()));
    }
    Ok(factors
        .iter()
        .map(|f| 1.0 + l1_coherence(f))
        .product::<f64>()
        - 1.0)
}

/// Coherence of the reduced state on every non-empty qubit subset.
///
/// l1 coherence is invariant under relabelling qubits inside a subset, so a
/// profile for any ordering is a set of table lookups. Subsets are keyed by
/// bitmask, bit `q` selecting qubit `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsetCoherence {
    n_qubits: usize,
    values: Vec<f64>,
}

impl SubsetCoherence {
    pub fn new(rho: &DensityMatrix) -> Result<Self> {
        let n = rho.n_qubits();
        let full = (1u32 << n) - 1;
        let mut values = vec![0.0; 1usize << n];
        for mask in 1..=full {
            values[mask as usize] = if mask == full {
                l1_coherence(rho)
            } else {
                l1_coherence(&partial_trace(rho, &QubitSubset::from_mask(mask, n)?)?)
            };
        }
        Ok(Self {
            n_qubits: n,
            values,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn get(&self, mask: u32) -> f64 {
        self.values[mask as usize]
    }

    pub fn of_qubits(&self, qubits: &[usize]) -> f64 {
        self.get(qubits.iter().fold(0u32, |m, &q| m | 1 << q))
    }

    pub fn total(&self) -> f64 {
        self.get((1u32 << self.n_qubits) - 1)
    }

    pub fn profile(&self, ordering: &[usize]) -> Result<CoherenceProfile> {
        let n = self.n_qubits;
        validate_ordering(ordering, n)?;
        Ok(CoherenceProfile {
            ordering: ordering.to_vec(),
            singles: ordering.iter().map(|&q| self.of_qubits(&[q])).collect(),
            tails: (1..n).map(|p| self.of_qubits(&ordering[p..])).collect(),
            total: self.total(),
        })
    }
}

/// True when `value` counts as zero coherence.
pub(crate) fn is_zero(value: f64) -> bool {
    value.abs() < Config::global().zero_coherence
}
