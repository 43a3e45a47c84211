//! Independent reference implementations and verification drivers.
//!
//! Nothing here is used by the production path; these exist to cross-check
//! it. [`coherence_oracle`] is a literal double loop, [`transcribe`] holds the
//! closed-form bounds term by term, and the fuzz and grid drivers return a
//! [`VerifySummary`] in which violations are data rather than errors.

pub mod corpus;
mod fuzz;
mod golden;
mod grid;
mod summary;
pub mod transcribe;

pub use fuzz::{
    bound_validity_fuzz, bound_validity_items, bound_validity_profile, bound_validity_state,
    superadditivity_fuzz, superadditivity_items, superadditivity_state, FuzzConfig,
};
pub use golden::{coherent_product, pinned_goldens, DEGENERACY_CASES};
pub use grid::{inequality_grid_verify, GridSpec};
pub use summary::{Tally, VerifySummary, Violation, MAX_STORED_VIOLATIONS};

use crate::qstate::DensityMatrix;

/// `Σ_{i≠j} sqrt(re² + im²)` by explicit indexing.
pub fn coherence_oracle(rho: &DensityMatrix) -> f64 {
    let d = rho.dim();
    let mut sum = 0.0;
    for i in 0..d {
        for j in 0..d {
            if i != j {
                let z = rho.get(i, j);
                sum += (z.re * z.re + z.im * z.im).sqrt();
            }
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherence::l1_coherence;
    use crate::qstate::{random_pure, schmidt_state, SchmidtSpec};

    #[test]
    fn oracle_matches_production() {
        for seed in 0..10 {
            let rho = random_pure(3, seed).unwrap().density().unwrap();
            assert!((coherence_oracle(&rho) - l1_coherence(&rho)).abs() < 1e-10);
        }
    }

    #[test]
    fn example2_total_is_four() {
        let rho = schmidt_state(&SchmidtSpec::uniform(0.0).unwrap())
            .unwrap()
            .density()
            .unwrap();
        assert!((coherence_oracle(&rho) - 4.0).abs() < 1e-12);
        let amps: f64 = 5.0 * 5f64.sqrt().recip();
        assert!((amps * amps - 1.0 - 4.0).abs() < 1e-12);
    }
}
