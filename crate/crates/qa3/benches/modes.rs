//! Sequential (one-thread pool) against the default rayon pool on the three
//! data-parallel paths: embedding search, the cube scan, and batch
//! classification.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qa3::cubiquity::is_cubiquitous;
use qa3::embeddings::enumerate_embeddings;
use qa3::lattice::gram_form;
use qa3::par;
use qa3::pipeline::{batch_enumerate, BatchSpec};

const MODES: [(&str, usize); 2] = [("sequential", 1), ("parallel", 0)];

fn embeddings(c: &mut Criterion) {
    let q = gram_form(1, &[2, 3, 4, 5, 2, 3, 4, 5]).unwrap();
    let mut g = c.benchmark_group("embeddings");
    for (name, threads) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &threads, |b, &t| {
            b.iter(|| par::with_threads(t, || enumerate_embeddings(black_box(&q)).unwrap()))
        });
    }
    g.finish();
}

fn cube_scan(c: &mut Criterion) {
    // diag(2, ..., 2): every class is hit, so the scan never exits early
    let n = 18;
    let m: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 2 } else { 0 }).collect())
        .collect();
    let mut g = c.benchmark_group("cube_scan");
    g.sample_size(10);
    for (name, threads) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &threads, |b, &t| {
            b.iter(|| par::with_threads(t, || is_cubiquitous(black_box(&m)).unwrap()))
        });
    }
    g.finish();
}

fn batch(c: &mut Criterion) {
    let mut g = c.benchmark_group("batch");
    g.sample_size(10);
    for (name, threads) in MODES {
        let spec = BatchSpec {
            max_len: 5,
            t_set: vec![-1, 0, 1],
            cap: 5,
            threads,
        };
        g.bench_with_input(BenchmarkId::from_parameter(name), &spec, |b, s| {
            b.iter(|| batch_enumerate(black_box(s)).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, embeddings, cube_scan, batch);
criterion_main!(benches);
