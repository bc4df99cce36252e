use criterion::{criterion_group, criterion_main, Criterion};
use dqb_bench::inputs;
use dqb_core::preantipode::{compute_tau, solve_preantipode};
use dqb_core::validate_dqb;
use std::hint::black_box;

fn benches(c: &mut Criterion) {
    for input in inputs() {
        c.bench_function(&format!("validate_dqb/{}", input.name), |b| b.iter(|| validate_dqb(black_box(&input.h))));
        c.bench_function(&format!("solve_preantipode/{}", input.name), |b| {
            b.iter(|| solve_preantipode(black_box(&input.h)).unwrap())
        });
        c.bench_function(&format!("compute_tau/{}", input.name), |b| {
            b.iter(|| compute_tau(black_box(&input.h), &input.s, &input.module).unwrap())
        });
    }
}

criterion_group! {
    name = axioms;
    config = Criterion::default().sample_size(10);
    targets = benches
}
criterion_main!(axioms);
