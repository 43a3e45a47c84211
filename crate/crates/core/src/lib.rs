//! # l1coh
//!
//! l1-norm coherence of multiqubit states and the family of superadditivity
//! lower bounds on its α-th power.
//!
//! The crate is organised bottom-up:
//!
//! - [`qstate`]: dense pure states and density matrices over a qubit register,
//!   tensor products, partial traces, Haar sampling and the three-qubit
//!   Schmidt form.
//! - [`statefile`]: the JSON state file format.
//! - [`coherence`]: \(C_{l_1}(\rho)=\sum_{i\ne j}|\rho_{ij}|\) and the ordered
//!   [`CoherenceProfile`](coherence::CoherenceProfile) (single-qubit and tail
//!   coherences) that every bound consumes.
//! - [`scalar_ineq`]: the scalar kernels (Γ, Λ, the power inequalities and the
//!   dominance margin), all returning signed slack.
//! - [`bounds`]: bound evaluators, applicability conditions, parameter and
//!   ordering search.
//! - [`oracle`]: brute-force re-implementations, straight-line formula
//!   transcriptions, grid verifiers and fuzz drivers.
//! - [`sweep`]: one- and two-axis parameter grids exported as CSV.
//!
//! ## Conventions
//!
//! Qubit 0 is the leftmost tensor factor and the most significant bit of a
//! basis index: bit `n - 1 - q` of index `i` is the value of qubit `q`.
//! Coherence is always taken in the product computational basis.
//!
//! ## Parallelism
//!
//! Batch workloads (fuzzing, sweeps, ordering search) take an
//! [`Execution`] argument. With the default `parallel` feature,
//! [`Execution::Parallel`] fans out over rayon; without it, every call runs
//! sequentially. Results are identical either way.

#![forbid(unsafe_code)]

pub mod bounds;
pub mod coherence;
pub mod config;
mod error;
pub mod exec;
pub mod oracle;
pub mod qstate;
pub mod scalar_ineq;
pub mod statefile;
pub mod sweep;

pub use error::{Error, Result};
pub use exec::Execution;

pub use num_complex::Complex64;
