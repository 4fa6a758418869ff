use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use invsphere_bench::gaussian;
use invsphere_core::{
    abid, ball_to_cap, brute_force_knn, cap_to_ball, embed, embed_simplified, unembed, Ball, EmbeddingParams,
    KnnMetric, MetricContext,
};

fn bench_embedding(c: &mut Criterion) {
    let mut group = c.benchmark_group("embed");
    for d in [10, 100] {
        let x = gaussian(10_000, d, 1);
        group.bench_with_input(BenchmarkId::new("simplified", d), &x, |b, x| {
            b.iter(|| embed_simplified(black_box(x), 3.0).unwrap())
        });
        let mut v = vec![0.1; d + 1];
        let n = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        v.iter_mut().for_each(|a| *a /= n);
        let params = EmbeddingParams::new(v, 3.0).unwrap();
        group.bench_with_input(BenchmarkId::new("general", d), &x, |b, x| {
            b.iter(|| embed(black_box(x), &params).unwrap())
        });
        let y = embed(&x, &params).unwrap();
        group.bench_with_input(BenchmarkId::new("unembed_general", d), &y, |b, y| {
            b.iter(|| unembed(black_box(y), &params).unwrap())
        });
    }
    group.finish();
}

fn bench_duality(c: &mut Criterion) {
    let ball = Ball::new(vec![0.5; 32], 1.3).unwrap();
    c.bench_function("ball_to_cap_to_ball_d32", |b| {
        b.iter(|| {
            let cap = ball_to_cap(black_box(&ball), 2.0).unwrap();
            cap_to_ball(&cap, 2.0).unwrap()
        })
    });
}

fn bench_abid(c: &mut Criterion) {
    let x = gaussian(500, 10, 2);
    let y = embed_simplified(&x, 3.0).unwrap();
    c.bench_function("abid_500x11_budget_1e5", |b| {
        b.iter(|| abid(black_box(y.as_dataset()), 100_000, 0).unwrap())
    });
}

fn bench_knn(c: &mut Criterion) {
    let base = gaussian(2_000, 32, 3);
    let queries = gaussian(20, 32, 4);
    let s = 5.0;
    let eb = embed_simplified(&base, s).unwrap();
    let eq = embed_simplified(&queries, s).unwrap();
    let mut group = c.benchmark_group("knn_k10");
    group.bench_function("euclidean", |b| {
        b.iter(|| brute_force_knn(&base, &queries, 10, KnnMetric::Euclidean).unwrap())
    });
    let ctx = MetricContext::new(s).unwrap();
    group.bench_function("bridged", |b| {
        b.iter(|| brute_force_knn(eb.as_dataset(), eq.as_dataset(), 10, KnnMetric::BridgedOriginal(ctx)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_embedding, bench_duality, bench_abid, bench_knn);
criterion_main!(benches);
