use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lucat_core::{Lucanomials, LucasCache};

// Operand shapes taken from the top of a 200-wide sweep: a large central
// lucanomial against a Lucas polynomial.
fn multiply(c: &mut Criterion) {
    let engine = Lucanomials::default();
    let mut group = c.benchmark_group("multiply");
    group.sample_size(10);
    for n in [50usize, 100, 150] {
        let big = engine.binom(2 * n, n as i64).unwrap();
        let small = engine.lucas(2 * n + 1);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| black_box(&*big) * black_box(&*small))
        });
    }
    group.finish();
}

fn divide(c: &mut Criterion) {
    let engine = Lucanomials::default();
    let mut group = c.benchmark_group("exact_div");
    group.sample_size(10);
    for n in [50usize, 100, 150] {
        let num = engine.binom(2 * n, n as i64).unwrap();
        let den = engine.lucas(n + 1);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| black_box(&*num).exact_div(black_box(&den)).unwrap())
        });
    }
    group.finish();
}

fn lucas_table(c: &mut Criterion) {
    c.bench_function("lucas 1..=400", |b| {
        b.iter(|| {
            let cache = LucasCache::new();
            black_box(cache.lucas(400))
        })
    });
}

criterion_group!(benches, multiply, divide, lucas_table);
criterion_main!(benches);
