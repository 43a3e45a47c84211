//! Pinned golden values and degeneracy identities.
//!
//! Each check records `allowed − |got − want|`, so a summary built with zero
//! tolerance fails exactly when some value leaves its window.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::corpus::synthetic_profile;
use super::{coherence_oracle, transcribe, VerifySummary};
use crate::bounds::{
    cor1_bound, ref_scheme_bound, thm1_bound, thm2_bound, thm3_bound, thm4_bound, BoundParams,
    RefScheme, Step,
};
use crate::coherence::{identity_profile, CoherenceProfile};
use crate::qstate::{product_state, qubit_with_coherence, schmidt_state, SchmidtSpec};
use crate::Result;

/// Profiles per degeneracy identity.
pub const DEGENERACY_CASES: usize = 100;
const DEGENERACY_SEED: u64 = 0x5eed;

/// Product state whose qubits carry the given single-qubit coherences.
pub fn coherent_product(coherences: &[f64]) -> Result<crate::qstate::PureState> {
    let factors = coherences
        .iter()
        .map(|&c| qubit_with_coherence(c))
        .collect::<Result<Vec<_>>>()?;
    product_state(&factors)
}

fn check(s: &mut VerifySummary, id: &str, got: f64, want: f64, allowed: f64) {
    s.record(id, allowed - (got - want).abs(), || {
        format!("got {got}, want {want} ± {allowed}")
    });
}

fn relative(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

/// Runs every pinned check. `flip` negates one expected value so the suite
/// can prove it is able to fail.
pub fn pinned_goldens(flip: bool) -> Result<VerifySummary> {
    let mut s = VerifySummary::new(0.0);

    let ex1 = identity_profile(&coherent_product(&[1.0, 0.8, 0.6])?.density()?)?;
    for (i, want) in [1.0, 0.8, 0.6].into_iter().enumerate() {
        check(&mut s, "example1_profile", ex1.singles()[i], want, 1e-12);
    }
    check(
        &mut s,
        "example1_profile",
        ex1.tails()[0],
        47.0 / 25.0,
        1e-12,
    );
    check(&mut s, "example1_profile", ex1.total(), 119.0 / 25.0, 1e-12);

    let rho2 = schmidt_state(&SchmidtSpec::uniform(0.0)?)?.density()?;
    let ex2 = identity_profile(&rho2)?;
    for (i, want) in [0.4, 0.8, 0.8].into_iter().enumerate() {
        check(&mut s, "example2_profile", ex2.singles()[i], want, 1e-12);
    }
    check(
        &mut s,
        "example2_profile",
        ex2.tails()[0],
        12.0 / 5.0,
        1e-12,
    );
    check(
        &mut s,
        "example2_total",
        ex2.total(),
        coherence_oracle(&rho2),
        1e-12,
    );
    check(&mut s, "example2_total", ex2.total(), 4.0, 1e-12);

    let p1 = BoundParams::new(2.0, 0.9, 2.0);
    let cor1 = cor1_bound(&ex1, &p1)?;
    let (c, t) = (ex1.singles(), ex1.tails());
    check(
        &mut s,
        "example1_cor1",
        cor1.rhs,
        transcribe::cor1_rhs(c, t, 2.0, 0.81, 0.81),
        1e-12,
    );
    check(&mut s, "example1_cor1", cor1.rhs, 5.182658, 1e-5);
    let ref31 = ref_scheme_bound(&ex1, &p1, RefScheme::Ref31)?;
    check(
        &mut s,
        "example1_ref31",
        ref31.rhs,
        transcribe::ref_hybrid_rhs(c, 2.0, 0.81, 0.81),
        1e-12,
    );
    for r in [&cor1, &ref31] {
        s.record("example1_below_lhs", r.lhs - r.rhs, || {
            format!("{}: {} > {}", r.bound, r.rhs, r.lhs)
        });
        s.record(
            "example1_applicable",
            if r.applicable() { 0.0 } else { -1.0 },
            || format!("{} not applicable", r.bound),
        );
    }

    let anchor = if flip { -4.0 / 15.0 } else { 4.0 / 15.0 };
    for (k1, want) in [(1.0, anchor), ((1.0f64 / 6.0).sqrt(), -8.0 / 15.0)] {
        let params = BoundParams::per_index(2.0, vec![k1, 1.0], 2.0);
        let diff =
            cor1_bound(&ex2, &params)?.rhs - ref_scheme_bound(&ex2, &params, RefScheme::Ref31)?.rhs;
        check(&mut s, "example2_anchor", diff, want, 1e-10);
    }

    let small = identity_profile(&coherent_product(&[1.0, 0.2, 0.1])?.density()?)?;
    check(
        &mut s,
        "small_product_thm1",
        thm1_bound(&small, &BoundParams::new(2.0, 0.5, 1.0))?.rhs,
        1.59,
        1e-12,
    );
    let thm3 = thm3_bound(&small, &BoundParams::per_index(2.0, vec![0.32, 0.5], 1.0))?;
    check(&mut s, "small_product_thm3", thm3.rhs, 1.69125, 1e-12);
    let ref29 = ref_scheme_bound(&small, &BoundParams::new(2.0, 1.0, 1.0), RefScheme::Ref29)?;
    check(&mut s, "small_product_ref29", ref29.rhs, 1.21, 1e-12);

    degeneracies(&mut s)?;
    Ok(s)
}

fn degeneracies(s: &mut VerifySummary) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(DEGENERACY_SEED);
    for _ in 0..DEGENERACY_CASES {
        let n = rng.random_range(3..=6);
        let alpha = rng.random_range(2.0..5.0);
        let k = rng.random_range(0.3..=1.0);
        let delta = rng.random_range(1.0..2.0);
        let kd = f64::powf(k, delta);
        let global = BoundParams::new(alpha, k, delta);
        let uniform = BoundParams::per_index(alpha, vec![k; n - 1], delta);

        let p = synthetic_profile(&mut rng, &Step::split(n - 1, n), &vec![kd; n - 1]);
        let (a, b) = (thm1_bound(&p, &global)?, thm3_bound(&p, &uniform)?);
        record_identity(
            s,
            "degeneracy_thm3_thm1",
            &p,
            a.applicable() && b.applicable(),
            a.rhs,
            b.rhs,
        );

        let m = rng.random_range(1..=n - 2);
        let p = synthetic_profile(&mut rng, &Step::split(m, n), &vec![kd; n - 1]);
        let a = thm2_bound(&p, &global.clone().with_m(m))?;
        let b = thm4_bound(&p, &uniform.clone().with_m(m))?;
        record_identity(
            s,
            "degeneracy_thm4_thm2",
            &p,
            a.applicable() && b.applicable(),
            a.rhs,
            b.rhs,
        );

        let m = rng.random_range(1..=n - 1);
        let p = synthetic_profile(&mut rng, &Step::split(m, n), &vec![1.0; n - 1]);
        let unit = BoundParams::new(alpha, 1.0, delta).with_m(m);
        let a = ref_scheme_bound(&p, &unit, RefScheme::Ref31)?;
        let b = ref_scheme_bound(&p, &unit, RefScheme::Ref29)?;
        record_identity(
            s,
            "degeneracy_ref31_ref29",
            &p,
            a.applicable() && b.applicable(),
            a.rhs,
            b.rhs,
        );
    }
    Ok(())
}

fn record_identity(
    s: &mut VerifySummary,
    id: &str,
    p: &CoherenceProfile,
    applicable: bool,
    a: f64,
    b: f64,
) {
    let slack = if applicable {
        1e-12 - relative(a, b)
    } else {
        -1.0
    };
    s.record(id, slack, || {
        format!(
            "singles {:?}, tails {:?}: {a} vs {b} (applicable: {applicable})",
            p.singles(),
            p.tails()
        )
    });
}
