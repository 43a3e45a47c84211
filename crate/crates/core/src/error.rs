use thiserror::Error;

/// Errors raised by state construction, coherence evaluation and bounds.
///
/// A bound whose conditions fail is *not* an error: evaluators return a
/// report carrying the verdict. [`Error::NotApplicable`] is produced only when
/// a caller asks for an applicable report explicitly.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("amplitude vector length {0} is not a power of two >= 2")]
    NonPowerOfTwoLength(usize),

    #[error("state vector has zero norm")]
    ZeroNorm,

    #[error("squared norm {norm_sq} deviates from 1 by more than {tolerance}")]
    NormTooFarFromOne { norm_sq: f64, tolerance: f64 },

    #[error("{qubits} qubits exceeds the cap of {cap}")]
    DimensionOverflow { qubits: usize, cap: usize },

    #[error("non-finite entry at {0:?}")]
    NonFinite((usize, usize)),

    #[error("matrix is not Hermitian: entry {at:?} deviates by {deviation:e}")]
    NotHermitian { at: (usize, usize), deviation: f64 },

    #[error("trace is {0}, expected 1")]
    TraceNotOne(f64),

    #[error("diagonal entry {index} is not a non-negative real: {value}")]
    BadDiagonal {
        index: usize,
        value: num_complex::Complex64,
    },

    #[error("matrix shape does not match {n_qubits} qubits: {detail}")]
    ShapeMismatch { n_qubits: usize, detail: String },

    #[error("partial trace keep set is empty")]
    EmptyKeepSet,

    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    IndexOutOfRange { index: usize, n_qubits: usize },

    #[error("qubit indices must be strictly increasing: {0:?}")]
    UnsortedSubset(Vec<usize>),

    #[error("Schmidt coefficients violate normalisation: sum of squares {0}")]
    NormalizationViolation(f64),

    #[error("ordering {ordering:?} is not a permutation of 0..{n}")]
    InvalidPermutation { ordering: Vec<usize>, n: usize },

    #[error("parameter out of domain: {0}")]
    DomainError(String),

    #[error("split index m = {m} outside [1, {max}]")]
    InvalidM { m: usize, max: usize },

    #[error("bound {bound} requires {expected}, got {n} qubits")]
    WrongArity {
        bound: &'static str,
        expected: &'static str,
        n: usize,
    },

    #[error("per-index k list has length {got}, expected {expected}")]
    ArityMismatch { got: usize, expected: usize },

    #[error("bound {bound} is not applicable: {failed:?}")]
    NotApplicable { bound: String, failed: Vec<String> },

    #[error("no valid parameters: {0}")]
    NoValidParams(String),

    #[error("ordering search limited to {max} qubits, got {n}")]
    TooManyQubits { n: usize, max: usize },

    #[error("state file: {0}")]
    StateFile(String),
}

pub type Result<T> = std::result::Result<T, Error>;
