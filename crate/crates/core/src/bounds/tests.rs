use approx::assert_abs_diff_eq;

use super::*;
use crate::qstate::{density_of, product_state, qubit_with_coherence};

fn example1() -> CoherenceProfile {
    CoherenceProfile::from_values(vec![1.0, 0.8, 0.6], vec![1.88, 0.6], 4.76).unwrap()
}

fn small_product() -> CoherenceProfile {
    CoherenceProfile::from_values(vec![1.0, 0.2, 0.1], vec![0.32, 0.1], 1.64).unwrap()
}

fn example2() -> CoherenceProfile {
    CoherenceProfile::from_values(vec![0.4, 0.8, 0.8], vec![2.4, 0.8], 4.0).unwrap()
}

#[test]
fn baseline_on_example1() {
    let r = baseline_bound(&example1(), 2.0).unwrap();
    assert_abs_diff_eq!(r.rhs, 2.0, epsilon = 1e-12);
    assert_abs_diff_eq!(r.lhs, 22.6576, epsilon = 1e-10);
    assert!(r.applicable());
}

#[test]
fn cor1_on_example1() {
    let r = cor1_bound(&example1(), &BoundParams::new(2.0, 0.9, 2.0)).unwrap();
    assert!(r.applicable());
    assert_abs_diff_eq!(r.rhs, 5.182_653_007_617_546, epsilon = 1e-12);
    assert_abs_diff_eq!(r.rhs, 5.182658, epsilon = 1e-5);
    assert_abs_diff_eq!(
        r.coefficients["lambda_1"] * 1.0,
        2.234_567_901_234_568,
        epsilon = 1e-12
    );
    assert!(r.gap > 0.0);
}

#[test]
fn ref31_on_example1_uses_hybrid_pattern() {
    let r = ref_scheme_bound(
        &example1(),
        &BoundParams::new(2.0, 0.9, 2.0),
        RefScheme::Ref31,
    )
    .unwrap();
    assert!(r.applicable());
    assert_eq!(r.steps, vec![Step::Ascend, Step::Descend]);
    assert_abs_diff_eq!(r.rhs, 0.64 + 3.469_135_802_469_136 * 1.36, epsilon = 1e-12);
}

#[test]
fn thm1_not_applicable_on_example1() {
    let r = thm1_bound(&example1(), &BoundParams::new(2.0, 0.9, 2.0)).unwrap();
    assert!(!r.applicable());
    assert!(r.require_applicable().is_err());
}

#[test]
fn thm1_and_thm3_on_small_product() {
    let p = small_product();
    let r1 = thm1_bound(&p, &BoundParams::new(2.0, 0.5, 1.0)).unwrap();
    assert!(r1.applicable());
    assert_abs_diff_eq!(r1.rhs, 1.59, epsilon = 1e-12);
    assert_abs_diff_eq!(r1.coefficients["Omega_1"], 1.32, epsilon = 1e-12);
    assert_abs_diff_eq!(r1.coefficients["Omega_2"], 1.5, epsilon = 1e-12);
    let r3 = thm3_bound(&p, &BoundParams::per_index(2.0, vec![0.32, 0.5], 1.0)).unwrap();
    assert!(r3.applicable());
    assert_abs_diff_eq!(r3.rhs, 1.69125, epsilon = 1e-12);
    assert_abs_diff_eq!(r3.coefficients["Gamma_1"], 4.125, epsilon = 1e-12);
}

#[test]
fn ref29_with_full_descent() {
    let p = small_product();
    let r = ref_scheme_bound(
        &p,
        &BoundParams::new(2.0, 1.0, 1.0).with_m(2),
        RefScheme::Ref29,
    )
    .unwrap();
    assert!(r.applicable());
    assert_eq!(
        (1..=3)
            .map(|i| r.coefficients[&format!("lambda_{i}")])
            .collect::<Vec<_>>(),
        vec![1.0, 3.0, 9.0]
    );
    assert_abs_diff_eq!(r.rhs, 1.21, epsilon = 1e-12);
}

#[test]
fn ref31_at_unit_k_is_ref29() {
    for p in [example1(), small_product(), example2()] {
        let a = ref_scheme_bound(&p, &BoundParams::new(2.5, 1.0, 3.0), RefScheme::Ref31).unwrap();
        let b = ref_scheme_bound(&p, &BoundParams::new(2.5, 1.0, 1.0), RefScheme::Ref29).unwrap();
        assert_abs_diff_eq!(a.rhs, b.rhs, epsilon = 1e-12);
        assert_eq!(a.applicable(), b.applicable());
    }
}

#[test]
fn thm2_product_example() {
    let state = product_state(&[
        qubit_with_coherence(1.0).unwrap(),
        qubit_with_coherence(0.1).unwrap(),
        qubit_with_coherence(0.3).unwrap(),
    ])
    .unwrap();
    let p = coherence::identity_profile(&density_of(&state).unwrap()).unwrap();
    let params = BoundParams::new(2.0, 0.8, 1.0).with_m(1);
    let r = thm2_bound(&p, &params).unwrap();
    assert!(r.applicable());
    let (c1, c2, c3, t) = (1.0, 0.1, 0.3, 0.43);
    let g = gamma(0.8, 2.0);
    let expected = (1.0 + t / c1) * c1 * c1 + g * g * c2 * c2 + g * (1.0 + c2 / c3) * c3 * c3;
    assert_abs_diff_eq!(r.rhs, expected, epsilon = 1e-12);
    assert!(r.rhs <= r.lhs);
    assert!(matches!(
        thm2_bound(&p, &params.clone().with_m(2)),
        Err(Error::InvalidM { m: 2, max: 1 })
    ));
}

fn gamma(kd: f64, alpha: f64) -> f64 {
    ((1.0 + kd).powf(alpha) - kd - 1.0) / kd.powf(alpha)
}

#[test]
fn thm2_failing_ascent_is_named() {
    let p = small_product();
    let r = thm2_bound(&p, &BoundParams::new(2.0, 0.5, 1.0).with_m(1)).unwrap();
    assert!(!r.applicable());
    let failed = r.verdict.failed();
    assert_eq!(failed.len(), 1);
    assert!(failed[0].contains("C_2 ≤"), "{failed:?}");
}

#[test]
fn cor1_wrong_arity() {
    let p = CoherenceProfile::from_values(vec![1.0; 4], vec![3.0, 2.0, 1.0], 7.0).unwrap();
    assert!(matches!(
        cor1_bound(&p, &BoundParams::new(2.0, 1.0, 1.0)),
        Err(Error::WrongArity { .. })
    ));
}

#[test]
fn example2_difference_anchor() {
    let p = example2();
    let params = BoundParams::per_index(2.0, vec![1.0, 1.0], 2.0);
    let ours = cor1_bound(&p, &params).unwrap();
    let theirs = ref_scheme_bound(&p, &params, RefScheme::Ref31).unwrap();
    assert!(ours.applicable() && theirs.applicable());
    assert_abs_diff_eq!(ours.rhs - theirs.rhs, 4.0 / 15.0, epsilon = 1e-12);

    let k1 = (1.0f64 / 6.0).sqrt();
    let params = BoundParams::per_index(2.0, vec![k1, 1.0], 2.0);
    let ours = cor1_bound(&p, &params).unwrap();
    let theirs = ref_scheme_bound(&p, &params, RefScheme::Ref31).unwrap();
    assert!(ours.applicable() && theirs.applicable());
    assert_abs_diff_eq!(ours.rhs, 4.106_666_666_666_667, epsilon = 1e-9);
    assert_abs_diff_eq!(ours.rhs - theirs.rhs, -8.0 / 15.0, epsilon = 1e-9);
}

#[test]
fn uniform_k_degeneracy() {
    let p =
        CoherenceProfile::from_values(vec![2.0, 1.0, 0.3, 0.2], vec![1.5, 0.6, 0.2], 5.0).unwrap();
    let g = BoundParams::new(2.3, 0.8, 1.5);
    let pi = BoundParams::per_index(2.3, vec![0.8; 3], 1.5);
    assert_abs_diff_eq!(
        thm1_bound(&p, &g).unwrap().rhs,
        thm3_bound(&p, &pi).unwrap().rhs,
        epsilon = 1e-12
    );
    for m in 1..=2 {
        let a = thm2_bound(&p, &g.clone().with_m(m)).unwrap();
        let b = thm4_bound(&p, &pi.clone().with_m(m)).unwrap();
        assert_abs_diff_eq!(a.rhs, b.rhs, epsilon = 1e-12);
    }
}

#[test]
fn zero_single_is_dropped() {
    // C_2 = 0: its term vanishes and C_3 carries one fewer power of Γ.
    let p = CoherenceProfile::from_values(vec![1.0, 0.0, 0.5], vec![0.5, 0.5], 2.0).unwrap();
    let r = thm1_bound(&p, &BoundParams::new(2.0, 0.5, 1.0)).unwrap();
    assert!(r.applicable());
    assert_eq!(r.dropped, vec![2]);
    let g = 3.0;
    assert_abs_diff_eq!(r.rhs, 1.5 + g * 0.25, epsilon = 1e-12);
}

#[test]
fn zero_tail_terminates_chain() {
    let p = CoherenceProfile::from_values(vec![0.7, 0.0, 0.0], vec![0.0, 0.0], 0.7).unwrap();
    let r = thm1_bound(&p, &BoundParams::new(2.0, 0.5, 1.0)).unwrap();
    assert!(r.applicable());
    assert_abs_diff_eq!(r.rhs, 0.49, epsilon = 1e-15);
}

#[test]
fn diagonal_state_all_zero() {
    let rho = DensityMatrix::diagonal(&[0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.5]).unwrap();
    let reports = evaluate_all(&rho, &[0, 1, 2], &BoundParams::new(2.0, 0.9, 2.0)).unwrap();
    assert_eq!(reports.len(), BoundId::ALL.len());
    for r in reports.iter().filter(|r| r.applicable()) {
        assert_eq!(r.rhs, 0.0);
    }
}

#[test]
fn evaluate_all_sorted() {
    let params = BoundParams::new(2.0, 0.9, 2.0);
    let mut reports = evaluate_profile(&example1(), &params);
    let first_inapplicable = reports
        .iter()
        .position(|r| !r.applicable())
        .unwrap_or(reports.len());
    assert!(reports[..first_inapplicable]
        .windows(2)
        .all(|w| w[0].rhs >= w[1].rhs));
    assert!(reports[first_inapplicable..]
        .iter()
        .all(|r| !r.applicable()));
    let cor1 = reports.iter().find(|r| r.bound == BoundId::Cor1).unwrap();
    assert!(cor1.applicable());
    let thm1 = reports.iter().find(|r| r.bound == BoundId::Thm1).unwrap();
    assert!(!thm1.applicable());
    sort_reports(&mut reports);
}

#[test]
fn report_json_shape() {
    let r = cor1_bound(&example1(), &BoundParams::new(2.0, 0.9, 2.0)).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
    let mut expected = vec![
        "bound",
        "applicable",
        "conditions",
        "rhs",
        "lhs",
        "gap",
        "coefficients",
        "dropped",
    ];
    expected.sort();
    let mut keys_sorted = keys.clone();
    keys_sorted.sort();
    assert_eq!(keys_sorted, expected);
    assert_eq!(v["bound"], "Cor1");
}

#[test]
fn param_domains() {
    let p = example1();
    assert!(matches!(
        thm1_bound(&p, &BoundParams::new(1.5, 0.9, 1.0)),
        Err(Error::DomainError(_))
    ));
    assert!(matches!(
        thm1_bound(&p, &BoundParams::new(2.0, 1.5, 1.0)),
        Err(Error::DomainError(_))
    ));
    assert!(matches!(
        thm1_bound(&p, &BoundParams::new(2.0, 0.5, 0.5)),
        Err(Error::DomainError(_))
    ));
    assert!(ref_scheme_bound(&p, &BoundParams::new(1.5, 0.9, 1.0), RefScheme::Ref30).is_ok());
    assert!(matches!(
        thm3_bound(&p, &BoundParams::per_index(2.0, vec![0.5], 1.0)),
        Err(Error::ArityMismatch {
            got: 1,
            expected: 2
        })
    ));
}

#[test]
fn best_params_ratios() {
    let p = small_product();
    let t3 = best_params(&p, 2.0, ParamMode::Thm3).unwrap();
    assert_eq!(t3.k, KMode::PerIndex(vec![0.32, 0.5]));
    let t1 = best_params(&p, 2.0, ParamMode::Thm1).unwrap();
    assert_eq!(t1.k, KMode::Global(0.5));
    assert!(matches!(
        best_params(&example1(), 2.0, ParamMode::Thm1),
        Err(Error::NoValidParams(_))
    ));
}

#[test]
fn best_ordering_puts_strong_qubit_first() {
    let state = product_state(&[
        qubit_with_coherence(0.1).unwrap(),
        qubit_with_coherence(1.0).unwrap(),
        qubit_with_coherence(0.2).unwrap(),
    ])
    .unwrap();
    let rho = density_of(&state).unwrap();
    let found = best_ordering(
        &rho,
        &BoundParams::new(2.0, 0.5, 1.0),
        BoundId::Thm1,
        Execution::Sequential,
    )
    .unwrap();
    assert_eq!(found.ordering[0], 1);
    assert_eq!(found.tried, 6);
}

use crate::exec::Execution;
