//! Sequential against data-parallel execution on the heavier sweeps.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use qvar::experiments::{chsh_quantum_max, chsh_simulate, medical_bayes, ChshConfig};
use qvar::inference::{prop2_experiment, SimulationSpec};
use qvar::spin::{resolution_deviation_with, SpinQuantumNumber};
use qvar::validation::measurement_sweep;
use qvar::Execution;

const STRATEGIES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn bench_monte_carlo(c: &mut Criterion) {
    let mut g = c.benchmark_group("monte_carlo");
    g.sample_size(10);
    let cfg = ChshConfig::from_degrees([0.0, 90.0, 45.0, -45.0], 200_000, 1).unwrap();
    let spec = SimulationSpec::new(200_000, 1, 0.0).unwrap();
    for (name, exec) in STRATEGIES {
        g.bench_with_input(
            BenchmarkId::new("medical_bayes_1e6", name),
            &exec,
            |b, &e| b.iter(|| medical_bayes(black_box(1_000_000), 1, e).unwrap()),
        );
        g.bench_with_input(
            BenchmarkId::new("chsh_simulate_2e5", name),
            &exec,
            |b, &e| b.iter(|| chsh_simulate(black_box(&cfg), e)),
        );
        g.bench_with_input(BenchmarkId::new("prop2_2e5", name), &exec, |b, &e| {
            b.iter(|| prop2_experiment(-1.0, 1.5, black_box(&spec), e).unwrap())
        });
    }
    g.finish();
}

fn bench_deterministic(c: &mut Criterion) {
    let mut g = c.benchmark_group("deterministic");
    g.sample_size(10);
    for (name, exec) in STRATEGIES {
        g.bench_with_input(BenchmarkId::new("chsh_grid_2deg", name), &exec, |b, &e| {
            b.iter(|| chsh_quantum_max(black_box(2.0), e).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("resolution_r10", name), &exec, |b, &e| {
            b.iter(|| {
                resolution_deviation_with(SpinQuantumNumber::new(20), black_box(40), e).unwrap()
            })
        });
        g.bench_with_input(
            BenchmarkId::new("measurement_sweep_100", name),
            &exec,
            |b, &e| b.iter(|| measurement_sweep(black_box(100), 200, 1, e).unwrap()),
        );
    }
    g.finish();
}

criterion_group!(benches, bench_monte_carlo, bench_deterministic);
criterion_main!(benches);
