use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use l1coh::bounds::{best_ordering, BoundId, BoundParams};
use l1coh::coherence::CoherenceProfile;
use l1coh::oracle::{
    bound_validity_fuzz, inequality_grid_verify, superadditivity_fuzz, FuzzConfig, GridSpec,
};
use l1coh::qstate::random_pure;
use l1coh::sweep::{run_sweep, SweepSpec};
use l1coh::Execution;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn fuzz(c: &mut Criterion) {
    let mut group = c.benchmark_group("fuzz");
    group.sample_size(10);
    let superadd = FuzzConfig::new(200, 4, 7).unwrap();
    let validity = FuzzConfig::new(20, 3, 7).unwrap();
    for (name, exec) in MODES {
        group.bench_with_input(
            BenchmarkId::new("superadditivity", name),
            &exec,
            |b, &exec| b.iter(|| black_box(superadditivity_fuzz(&superadd, exec).unwrap())),
        );
        group.bench_with_input(
            BenchmarkId::new("bound_validity", name),
            &exec,
            |b, &exec| {
                b.iter(|| black_box(bound_validity_fuzz(&validity, &BoundId::ALL, exec).unwrap()))
            },
        );
    }
    group.finish();
}

fn inequality_grid(c: &mut Criterion) {
    let mut group = c.benchmark_group("inequality_grid");
    group.sample_size(10);
    let spec = GridSpec::default();
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| black_box(inequality_grid_verify(&spec, exec).unwrap()))
        });
    }
    group.finish();
}

fn sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    let profile =
        CoherenceProfile::from_values(vec![1.0, 0.8, 0.6], vec![1.88, 0.6], 4.76).unwrap();
    let spec = SweepSpec {
        axes: vec![
            "alpha:2:5:121".parse().unwrap(),
            "k:0.1:1:100".parse().unwrap(),
        ],
        alpha: 2.0,
        k: 0.9,
        delta: 2.0,
        fixed_kn: None,
        bounds: ["Cor1", "Ref31", "Cor1:delta=1", "Ref30:delta=1", "Ref29"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect(),
    };
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| black_box(run_sweep(&profile, &spec, exec).unwrap()))
        });
    }
    group.finish();
}

fn ordering_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("best_ordering");
    group.sample_size(10);
    let rho = random_pure(7, 11).unwrap().density().unwrap();
    let params = BoundParams::new(2.0, 1.0, 1.0);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| black_box(best_ordering(&rho, &params, BoundId::Ref29, exec).ok()))
        });
    }
    group.finish();
}

criterion_group!(benches, fuzz, inequality_grid, sweep, ordering_search);
criterion_main!(benches);
