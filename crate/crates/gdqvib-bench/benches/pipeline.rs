//! Criterion benchmarks for the three pipeline stages: weighting-matrix
//! construction, global assembly, and the condense-plus-eigensolve.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use gdqvib_core::dq::{chebyshev_grid, DiffMatrixSet};
use gdqvib_core::{
    build_problem, condense, partition, solve_problem, CaseKind, GridSizes, PresetConfig,
};

fn bench_weights(c: &mut Criterion) {
    let mut group = c.benchmark_group("weights");
    for n in [15usize, 31] {
        let grid = chebyshev_grid(n, 1.0).unwrap();
        group.bench_function(format!("diff_matrix_set_{n}"), |b| {
            b.iter(|| DiffMatrixSet::build(black_box(&grid)))
        });
    }
    group.finish();
}

fn bench_assembly(c: &mut Criterion) {
    let mut group = c.benchmark_group("assembly");
    for (label, kind, k) in [
        ("ffff_15", CaseKind::Case2Ffff, 15),
        ("coupled_15", CaseKind::Case4Coupled, 15),
    ] {
        let mut cfg = PresetConfig::new(kind);
        cfg.sizes = GridSizes::square(k);
        group.bench_function(label, |b| {
            b.iter(|| build_problem(black_box(&cfg)).unwrap())
        });
    }
    group.finish();
}

fn bench_condense_and_solve(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve");
    group.sample_size(20);
    for (label, kind) in [
        ("ffff_15", CaseKind::Case2Ffff),
        ("coupled_15", CaseKind::Case4Coupled),
    ] {
        let cfg = PresetConfig::new(kind);
        let problem = build_problem(&cfg).unwrap();
        group.bench_function(format!("{label}_condense"), |b| {
            b.iter_batched(
                || partition(&problem.system).unwrap(),
                |parts| condense(black_box(&parts)).unwrap(),
                BatchSize::SmallInput,
            )
        });
        group.bench_function(format!("{label}_full_solve"), |b| {
            b.iter(|| solve_problem(black_box(&problem)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_weights, bench_assembly, bench_condense_and_solve);
criterion_main!(benches);
