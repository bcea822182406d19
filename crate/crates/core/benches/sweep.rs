use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use lambda_gen::report::TauMethod;
use lambda_gen::sweep::{self, SweepRange};
use lambda_gen::{delorme, summarize, SemigroupPM};

fn single_pair(c: &mut Criterion) {
    let s = SemigroupPM::new(122, 281).unwrap();
    c.bench_function("closed_form <122,281>", |b| {
        b.iter(|| summarize(black_box(&s)).unwrap())
    });
    c.bench_function("naive_oracle <122,281>", |b| {
        b.iter(|| delorme::run_naive(black_box(&s)))
    });
    c.bench_function("accelerated_oracle <122,281>", |b| {
        b.iter(|| delorme::run_accelerated(black_box(&s)))
    });
}

fn sweeps(c: &mut Criterion) {
    let range = SweepRange::new(3, 40, 60).unwrap();
    let mut group = c.benchmark_group("sweep 3..40 x ..60");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| sweep::run_sequential(black_box(range), TauMethod::All))
    });
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |b| {
        b.iter(|| sweep::run_parallel(black_box(range), TauMethod::All))
    });
    group.finish();
}

criterion_group!(benches, single_pair, sweeps);
criterion_main!(benches);
