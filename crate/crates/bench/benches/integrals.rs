use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pball_core::ball::phi;
use pball_core::{assemble_expansion, ball_integral, PExponent};

fn ball(c: &mut Criterion) {
    let mut g = c.benchmark_group("ball_integral");
    let pe = PExponent::new(2.0).unwrap();
    for q in [2.0, 1e2, 1e4] {
        g.bench_with_input(BenchmarkId::new("p2", q), &q, |b, &q| {
            b.iter(|| ball_integral(&pe, black_box(q), 1e-9).unwrap().value)
        });
    }
    // q near 1 goes through the folded tail
    g.bench_function("p3/q1.2", |b| {
        let pe = PExponent::new(3.0).unwrap();
        b.iter(|| ball_integral(&pe, black_box(1.2), 1e-9).unwrap().value)
    });
    g.finish();
}

fn log_moments(c: &mut Criterion) {
    let pe = PExponent::new(2.0).unwrap();
    c.bench_function("phi/n2/q10", |b| b.iter(|| phi(&pe, 2, black_box(10.0), 1e-12).unwrap()));
}

fn expansion(c: &mut Criterion) {
    let pe = PExponent::new(2.5).unwrap();
    c.bench_function("assemble_expansion/12", |b| {
        b.iter(|| assemble_expansion(black_box(&pe), 12).unwrap().regrouped()[1])
    });
}

criterion_group!(benches, ball, log_moments, expansion);
criterion_main!(benches);
