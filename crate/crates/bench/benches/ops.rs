use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use jennings_core::abelian::abelianization;
use jennings_core::TruncatedSeries;

fn dense_series(trunc: usize, start: usize, step: i64) -> TruncatedSeries {
    TruncatedSeries::from_coeffs(
        trunc,
        (start..trunc).map(|d| (d, ((d as i64 * step) % 7 - 3).into())),
    )
}

fn bench_compose(c: &mut Criterion) {
    let mut group = c.benchmark_group("compose");
    for trunc in [16usize, 32, 64] {
        let f = dense_series(trunc, 2, 3);
        let g = dense_series(trunc, 2, 5);
        group.bench_with_input(BenchmarkId::from_parameter(trunc), &trunc, |b, _| {
            b.iter(|| f.compose(&g).unwrap())
        });
    }
    group.finish();
}

fn bench_abelianization(c: &mut Criterion) {
    let mut group = c.benchmark_group("abelianization");
    group.sample_size(10);
    for k in [4usize, 6, 8] {
        group.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| {
            b.iter(|| abelianization(k).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_compose, bench_abelianization);
criterion_main!(benches);
