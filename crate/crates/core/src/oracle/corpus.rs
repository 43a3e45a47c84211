//! Test inputs: seeded random states, structured states and synthetic
//! coherence profiles that satisfy a chosen condition pattern.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::Step;
use crate::coherence::CoherenceProfile;
use crate::qstate::{
    make_pure, product_state, qubit_with_coherence, random_pure, schmidt_state, PureState,
    SchmidtSpec,
};
use crate::Result;

/// Seed of the `index`-th state of a fuzz run.
pub fn item_seed(seed: u64, index: u64) -> u64 {
    seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// `(|0…0⟩ + |1…1⟩)/√2`.
pub fn ghz(n: usize) -> Result<PureState> {
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
    amps[0] = Complex64::new(1.0, 0.0);
    amps[(1 << n) - 1] = Complex64::new(1.0, 0.0);
    let norm = 2f64.sqrt();
    make_pure(amps.into_iter().map(|a| a / norm).collect())
}

/// Equal superposition of the single-excitation basis states, plus `eps`
/// weight on `|0…0⟩` before normalisation.
pub fn w_like(n: usize, eps: f64) -> Result<PureState> {
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
    amps[0] = Complex64::new(eps, 0.0);
    for q in 0..n {
        amps[1 << q] = Complex64::new(1.0, 0.0);
    }
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    make_pure(amps.into_iter().map(|a| a / norm).collect())
}

/// Named structured states on `n` qubits, randomised by `seed`.
///
/// Products of single-qubit states, GHZ, W, and for three qubits a random
/// Schmidt-form state and `|0⟩ ⊗` a random two-qubit state (a qubit with zero
/// coherence).
pub fn structured_states(n: usize, seed: u64) -> Result<Vec<(String, PureState)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let factors = (0..n)
        .map(|_| qubit_with_coherence(rng.random_range(0.0..=1.0)))
        .collect::<Result<Vec<_>>>()?;
    let mut out = vec![
        ("product".to_string(), product_state(&factors)?),
        ("ghz".to_string(), ghz(n)?),
        ("w".to_string(), w_like(n, 0.0)?),
    ];
    if n >= 2 {
        let zero = PureState::basis(1, 0)?;
        let rest = random_pure(n - 1, rng.random())?;
        out.push(("zero_first".to_string(), zero.tensor(&rest)?));
    }
    if n == 3 {
        let mut lambda: [f64; 5] = std::array::from_fn(|_| rng.random_range(0.0..1.0));
        let norm = lambda.iter().map(|l| l * l).sum::<f64>().sqrt();
        lambda.iter_mut().for_each(|l| *l /= norm);
        let phi = rng.random_range(0.0..std::f64::consts::TAU);
        out.push((
            "schmidt".to_string(),
            schmidt_state(&SchmidtSpec::new(lambda, phi)?)?,
        ));
    }
    Ok(out)
}

/// A positive profile on which the level conditions for `steps` hold with
/// the given per-level `kd = k^δ`.
///
/// Built from the last qubit backwards; block coherences exceed the sum of
/// their parts, as they do for physical states.
pub fn synthetic_profile<R: Rng>(rng: &mut R, steps: &[Step], kd: &[f64]) -> CoherenceProfile {
    let n = steps.len() + 1;
    let mut singles = vec![0.0; n];
    let mut tails = vec![0.0; n - 1];
    singles[n - 1] = rng.random_range(0.05..1.0);
    let mut block = singles[n - 1];
    for p in (0..n - 1).rev() {
        tails[p] = block;
        singles[p] = match steps[p] {
            Step::Descend => block / kd[p] * rng.random_range(1.0..2.0),
            Step::Ascend => block * kd[p] * rng.random_range(0.05..1.0),
        };
        block = (singles[p] + block) * rng.random_range(1.0..1.5);
    }
    CoherenceProfile::from_values(singles, tails, block).expect("synthetic profile is well formed")
}
