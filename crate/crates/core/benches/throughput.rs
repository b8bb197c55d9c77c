use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mlu_core::batch::{sweep, FactorMode};
use mlu_core::digraph::closure_of_with;
use mlu_core::random::{random_corpus, random_digraph};
use mlu_core::{Execution, Tolerances};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const POLICIES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn closure(c: &mut Criterion) {
    let mut group = c.benchmark_group("closure");
    for n in [256usize, 1024] {
        let g = random_digraph(&mut ChaCha8Rng::seed_from_u64(1), n, 2.0 / n as f64);
        for (name, exec) in POLICIES {
            group.bench_with_input(BenchmarkId::new(name, n), &g, |b, g| {
                b.iter(|| closure_of_with(black_box(g), exec))
            });
        }
    }
    group.finish();
}

fn corpus_sweep(c: &mut Criterion) {
    let tol = Tolerances::default();
    let mut group = c.benchmark_group("sweep");
    group.sample_size(20);
    for count in [64usize, 256] {
        let corpus = random_corpus(&mut ChaCha8Rng::seed_from_u64(2), count, 12);
        for (name, exec) in POLICIES {
            group.bench_with_input(BenchmarkId::new(name, count), &corpus, |b, corpus| {
                b.iter(|| sweep(black_box(corpus), &FactorMode::ALL, &tol, exec))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, closure, corpus_sweep);
criterion_main!(benches);
