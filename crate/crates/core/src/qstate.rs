//! Dense pure states and density matrices over a qubit register.
//!
//! Index convention: for an `n`-qubit register, bit `n - 1 - q` of a basis
//! index is the computational value of qubit `q`. Qubit 0 is therefore the
//! leftmost tensor factor and `a ⊗ b` places the qubits of `a` before those
//! of `b`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::config::Config;
use crate::{Error, Result};

/// Matrix and amplitude entries.
pub type ComplexScalar = Complex64;

fn qubits_for_len(len: usize) -> Option<usize> {
    (len >= 2 && len.is_power_of_two()).then(|| len.trailing_zeros() as usize)
}

fn check_cap(qubits: usize, cap: usize) -> Result<()> {
    if qubits > cap {
        return Err(Error::DimensionOverflow { qubits, cap });
    }
    Ok(())
}

/// A normalised state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Validate and normalise an amplitude vector.
    ///
    /// Squared norms within the configured input tolerance of 1 are rescaled
    /// to unit norm; anything further off is rejected as malformed input.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let cfg = Config::global();
        let n_qubits =
            qubits_for_len(amplitudes.len()).ok_or(Error::NonPowerOfTwoLength(amplitudes.len()))?;
        check_cap(n_qubits, cfg.max_pure_qubits)?;
        if let Some(i) = amplitudes.iter().position(|a| !a.is_finite()) {
            return Err(Error::NonFinite((i, 0)));
        }
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if norm_sq == 0.0 {
            return Err(Error::ZeroNorm);
        }
        if (norm_sq - 1.0).abs() > cfg.input_norm_tol {
            return Err(Error::NormTooFarFromOne {
                norm_sq,
                tolerance: cfg.input_norm_tol,
            });
        }
        let scale = norm_sq.sqrt().recip();
        let amplitudes = amplitudes.into_iter().map(|a| a * scale).collect();
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        check_cap(n_qubits.max(1), Config::global().max_pure_qubits)?;
        let dim = 1usize << n_qubits;
        if n_qubits == 0 || index >= dim {
            return Err(Error::IndexOutOfRange { index, n_qubits });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `self ⊗ other`, with the qubits of `self` first.
    pub fn tensor(&self, other: &PureState) -> Result<PureState> {
        let n_qubits = self.n_qubits + other.n_qubits;
        check_cap(n_qubits, Config::global().max_pure_qubits)?;
        let amplitudes = self
            .amplitudes
            .iter()
            .flat_map(|a| other.amplitudes.iter().map(move |b| a * b))
            .collect();
        Ok(PureState {
            n_qubits,
            amplitudes,
        })
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn density(&self) -> Result<DensityMatrix> {
        density_of(self)
    }
}

/// Validated `2^n × 2^n` Hermitian unit-trace matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    dim: usize,
    entries: Vec<Complex64>,
}

impl DensityMatrix {
    /// Validate a row-major entry list.
    pub fn new(n_qubits: usize, entries: Vec<Complex64>) -> Result<Self> {
        let cfg = Config::global();
        if n_qubits == 0 {
            return Err(Error::ShapeMismatch {
                n_qubits,
                detail: "need at least one qubit".into(),
            });
        }
        check_cap(n_qubits, cfg.max_density_qubits)?;
        let dim = 1usize << n_qubits;
        if entries.len() != dim * dim {
            return Err(Error::ShapeMismatch {
                n_qubits,
                detail: format!("expected {} entries, got {}", dim * dim, entries.len()),
            });
        }
        let rho = Self {
            n_qubits,
            dim,
            entries,
        };
        rho.validate(cfg.structural_tol)?;
        Ok(rho)
    }

    /// Validate a matrix given as rows.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = rows.len();
        let n_qubits = qubits_for_len(dim).ok_or(Error::NonPowerOfTwoLength(dim))?;
        if let Some(bad) = rows.iter().position(|r| r.len() != dim) {
            return Err(Error::ShapeMismatch {
                n_qubits,
                detail: format!("row {bad} has {} entries, expected {dim}", rows[bad].len()),
            });
        }
        Self::new(n_qubits, rows.into_iter().flatten().collect())
    }

    /// Diagonal (incoherent) state with the given populations.
    pub fn diagonal(populations: &[f64]) -> Result<Self> {
        let dim = populations.len();
        let n_qubits = qubits_for_len(dim).ok_or(Error::NonPowerOfTwoLength(dim))?;
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (i, &p) in populations.iter().enumerate() {
            entries[i * dim + i] = Complex64::new(p, 0.0);
        }
        Self::new(n_qubits, entries)
    }

    // Products, reductions and outer products of valid inputs are valid up to
    // rounding; skip re-validation.
    fn from_raw(n_qubits: usize, entries: Vec<Complex64>) -> Self {
        let dim = 1usize << n_qubits;
        debug_assert_eq!(entries.len(), dim * dim);
        Self {
            n_qubits,
            dim,
            entries,
        }
    }

    fn validate(&self, tol: f64) -> Result<()> {
        let d = self.dim;
        for (idx, e) in self.entries.iter().enumerate() {
            if !e.is_finite() {
                return Err(Error::NonFinite((idx / d, idx % d)));
            }
        }
        for i in 0..d {
            let diag = self.get(i, i);
            if diag.im.abs() > tol || diag.re < -tol {
                return Err(Error::BadDiagonal {
                    index: i,
                    value: diag,
                });
            }
            for j in (i + 1)..d {
                let deviation = (self.get(i, j) - self.get(j, i).conj()).norm();
                if deviation > tol {
                    return Err(Error::NotHermitian {
                        at: (i, j),
                        deviation,
                    });
                }
            }
        }
        let tr = self.trace();
        if (tr - 1.0).abs() > tol {
            return Err(Error::TraceNotOne(tr));
        }
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex64]> {
        self.entries.chunks_exact(self.dim)
    }

    /// Real part of the trace.
    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i).re).sum()
    }

    /// `tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        // ρ Hermitian: tr(ρ²) = Σ_ij |ρ_ij|².
        self.entries.iter().map(|e| e.norm_sqr()).sum()
    }

    /// `D ρ D†` for the diagonal unitary `D = diag(e^{iθ_0}, …)`.
    pub fn conjugate_by_phases(&self, phases: &[f64]) -> Result<Self> {
        if phases.len() != self.dim {
            return Err(Error::ShapeMismatch {
                n_qubits: self.n_qubits,
                detail: format!("{} phases for dimension {}", phases.len(), self.dim),
            });
        }
        let d = self.dim;
        let entries = (0..d * d)
            .map(|idx| {
                let (i, j) = (idx / d, idx % d);
                self.entries[idx] * Complex64::from_polar(1.0, phases[i] - phases[j])
            })
            .collect();
        Ok(Self::from_raw(self.n_qubits, entries))
    }

    /// Largest entrywise modulus difference.
    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Strictly increasing, non-empty list of qubit positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QubitSubset {
    indices: Vec<usize>,
}

impl QubitSubset {
    pub fn new(indices: Vec<usize>, n_qubits: usize) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::EmptyKeepSet);
        }
        if let Some(&index) = indices.iter().find(|&&q| q >= n_qubits) {
            return Err(Error::IndexOutOfRange { index, n_qubits });
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::UnsortedSubset(indices));
        }
        Ok(Self { indices })
    }

    /// Sorts and deduplicates before validating.
    pub fn from_unsorted(mut indices: Vec<usize>, n_qubits: usize) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        Self::new(indices, n_qubits)
    }

    pub fn all(n_qubits: usize) -> Self {
        Self {
            indices: (0..n_qubits).collect(),
        }
    }

    /// Subset from a bitmask where bit `q` selects qubit `q`.
    pub fn from_mask(mask: u32, n_qubits: usize) -> Result<Self> {
        Self::new(
            (0..n_qubits).filter(|&q| mask >> q & 1 == 1).collect(),
            n_qubits,
        )
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// `(λ_0..λ_4, φ)` of the canonical three-qubit form
/// `λ0|000⟩ + λ1 e^{iφ}|100⟩ + λ2|101⟩ + λ3|110⟩ + λ4|111⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchmidtSpec {
    lambda: [f64; 5],
    phi: f64,
}

impl SchmidtSpec {
    pub fn new(lambda: [f64; 5], phi: f64) -> Result<Self> {
        if lambda.iter().any(|l| !l.is_finite() || *l < 0.0) {
            return Err(Error::DomainError(format!(
                "Schmidt coefficients must be finite and non-negative: {lambda:?}"
            )));
        }
        if !phi.is_finite() || !(0.0..std::f64::consts::TAU).contains(&phi) {
            return Err(Error::DomainError(format!("phase {phi} outside [0, 2π)")));
        }
        let sum_sq: f64 = lambda.iter().map(|l| l * l).sum();
        if (sum_sq - 1.0).abs() > Config::global().structural_tol {
            return Err(Error::NormalizationViolation(sum_sq));
        }
        Ok(Self { lambda, phi })
    }

    /// All five coefficients equal to `1/√5`.
    pub fn uniform(phi: f64) -> Result<Self> {
        Self::new([5f64.sqrt().recip(); 5], phi)
    }

    pub fn lambda(&self) -> [f64; 5] {
        self.lambda
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// Build a normalised [`PureState`]; see [`PureState::new`].
pub fn make_pure(amplitudes: Vec<Complex64>) -> Result<PureState> {
    PureState::new(amplitudes)
}

/// `ρ = |ψ⟩⟨ψ|`, `ρ_ij = a_i conj(a_j)`.
pub fn density_of(state: &PureState) -> Result<DensityMatrix> {
    check_cap(state.n_qubits, Config::global().max_density_qubits)?;
    let a = &state.amplitudes;
    let entries = a
        .iter()
        .flat_map(|ai| a.iter().map(move |aj| ai * aj.conj()))
        .collect();
    Ok(DensityMatrix::from_raw(state.n_qubits, entries))
}

/// Kronecker product `a ⊗ b`; qubits of `a` precede those of `b`.
pub fn tensor(a: &DensityMatrix, b: &DensityMatrix) -> Result<DensityMatrix> {
    let n_qubits = a.n_qubits + b.n_qubits;
    check_cap(n_qubits, Config::global().max_density_qubits)?;
    let (da, db) = (a.dim, b.dim);
    let d = da * db;
    let mut entries = vec![Complex64::new(0.0, 0.0); d * d];
    for i1 in 0..da {
        for j1 in 0..da {
            let x = a.get(i1, j1);
            if x == Complex64::new(0.0, 0.0) {
                continue;
            }
            for i2 in 0..db {
                let row = (i1 * db + i2) * d + j1 * db;
                for j2 in 0..db {
                    entries[row + j2] = x * b.get(i2, j2);
                }
            }
        }
    }
    Ok(DensityMatrix::from_raw(n_qubits, entries))
}

/// Full-register index offsets for every assignment of the listed qubits.
///
/// Entry `r` sets qubit `qubits[0]` from the most significant bit of `r`, so
/// the reduced register keeps the relative order of `qubits`.
fn offsets(qubits: &[usize], n_qubits: usize) -> Vec<usize> {
    let k = qubits.len();
    (0..1usize << k)
        .map(|r| {
            qubits.iter().enumerate().fold(0usize, |acc, (pos, &q)| {
                let bit = r >> (k - 1 - pos) & 1;
                acc | bit << (n_qubits - 1 - q)
            })
        })
        .collect()
}

/// Reduced state on `keep`, tracing out every other qubit.
pub fn partial_trace(rho: &DensityMatrix, keep: &QubitSubset) -> Result<DensityMatrix> {
    let n = rho.n_qubits;
    if keep.is_empty() {
        return Err(Error::EmptyKeepSet);
    }
    if let Some(&index) = keep.indices.iter().find(|&&q| q >= n) {
        return Err(Error::IndexOutOfRange { index, n_qubits: n });
    }
    if keep.len() == n {
        return Ok(rho.clone());
    }
    let traced: Vec<usize> = (0..n).filter(|q| !keep.indices.contains(q)).collect();
    let kept_off = offsets(&keep.indices, n);
    let traced_off = offsets(&traced, n);
    let dk = kept_off.len();
    let mut entries = vec![Complex64::new(0.0, 0.0); dk * dk];
    for (r, &ro) in kept_off.iter().enumerate() {
        for (c, &co) in kept_off.iter().enumerate() {
            entries[r * dk + c] = traced_off.iter().map(|&t| rho.get(ro | t, co | t)).sum();
        }
    }
    Ok(DensityMatrix::from_raw(keep.len(), entries))
}

/// The canonical three-qubit state for `spec`.
pub fn schmidt_state(spec: &SchmidtSpec) -> Result<PureState> {
    let [l0, l1, l2, l3, l4] = spec.lambda;
    let zero = Complex64::new(0.0, 0.0);
    let mut amps = vec![zero; 8];
    amps[0b000] = Complex64::new(l0, 0.0);
    amps[0b100] = Complex64::from_polar(l1, spec.phi);
    amps[0b101] = Complex64::new(l2, 0.0);
    amps[0b110] = Complex64::new(l3, 0.0);
    amps[0b111] = Complex64::new(l4, 0.0);
    let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
    if (norm_sq - 1.0).abs() > Config::global().structural_tol {
        return Err(Error::NormalizationViolation(norm_sq));
    }
    Ok(PureState {
        n_qubits: 3,
        amplitudes: amps,
    })
}

/// Haar-random pure state: `2^n` i.i.d. standard complex Gaussian amplitudes,
/// normalised. Deterministic in `seed`.
pub fn random_pure(n_qubits: usize, seed: u64) -> Result<PureState> {
    if n_qubits == 0 {
        return Err(Error::DomainError(
            "random_pure needs at least one qubit".into(),
        ));
    }
    check_cap(n_qubits, Config::global().max_pure_qubits)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut amplitudes: Vec<Complex64> = (0..1usize << n_qubits)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::ZeroNorm);
    }
    amplitudes.iter_mut().for_each(|a| *a /= norm);
    Ok(PureState {
        n_qubits,
        amplitudes,
    })
}

/// Single-qubit pure state `a|0⟩ + b|1⟩` (normalised) with real amplitudes
/// chosen so that its l1 coherence `2ab` equals `coherence ∈ [0, 1]`.
pub fn qubit_with_coherence(coherence: f64) -> Result<PureState> {
    if !(0.0..=1.0).contains(&coherence) {
        return Err(Error::DomainError(format!(
            "single-qubit coherence {coherence} outside [0, 1]"
        )));
    }
    let a = ((1.0 + (1.0 - coherence * coherence).sqrt()) / 2.0).sqrt();
    let b = coherence / (2.0 * a);
    PureState::new(vec![Complex64::new(a, 0.0), Complex64::new(b, 0.0)])
}

/// Tensor product of pure factors, left to right.
pub fn product_state(factors: &[PureState]) -> Result<PureState> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::DomainError("product of zero factors".into()))?;
    rest.iter().try_fold(first.clone(), |acc, f| acc.tensor(f))
}
