use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use strictchain::chains::transition_matrix_with;
use strictchain::gamma::EvaluationGrid;
use strictchain::limit::{stationary_moment_mc_with, McConfig};
use strictchain::measures::{multiplicative_measure_with, verify_ivanov, Alpha};
use strictchain::Exec;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn transition_matrices(c: &mut Criterion) {
    let mut g = c.benchmark_group("transition_matrix");
    g.sample_size(10);
    for n in [10, 14] {
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| transition_matrix_with(black_box(n), &Alpha::int(2), exec).unwrap())
            });
        }
    }
    g.finish();
}

fn measures(c: &mut Criterion) {
    let mut g = c.benchmark_group("multiplicative_measure");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new(name, 30), |b| {
            b.iter(|| multiplicative_measure_with(black_box(30), &Alpha::int(2), exec).unwrap())
        });
    }
    g.finish();
}

fn grids(c: &mut Criterion) {
    let mut g = c.benchmark_group("evaluation_grid");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new(name, 9), |b| b.iter(|| EvaluationGrid::build(black_box(9), exec).unwrap()));
        g.bench_function(BenchmarkId::new(format!("{name}_ivanov"), 8), |b| b.iter(|| verify_ivanov(8, exec)));
    }
    g.finish();
}

fn monte_carlo(c: &mut Criterion) {
    let mut g = c.benchmark_group("stationary_moment_mc");
    g.sample_size(10);
    for (name, exec) in MODES {
        let config = McConfig { exec, ..McConfig::new(200_000, 100) };
        g.bench_function(BenchmarkId::new(name, 16), |b| {
            b.iter(|| stationary_moment_mc_with(16, &Alpha::int(2), 1, 7, &config).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, transition_matrices, measures, grids, monte_carlo);
criterion_main!(benches);
