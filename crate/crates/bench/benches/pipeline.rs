use std::hint::black_box;

use aflayer::exact::solve_exact;
use aflayer::{count_crossings, run_pipeline_on, LayeredDrawing, PipelineConfig, RedStrategy};
use aflayer_bench::fixture;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn heuristic(c: &mut Criterion) {
    let mut group = c.benchmark_group("heuristic");
    for scale in [10, 30, 100] {
        let f = fixture(scale, 7);
        for strategy in [RedStrategy::A, RedStrategy::B] {
            let config = PipelineConfig {
                red_strategy: strategy,
                ..PipelineConfig::default()
            };
            let id = BenchmarkId::new(format!("{strategy:?}"), f.size);
            group.bench_with_input(id, &f, |b, f| {
                b.iter(|| run_pipeline_on(black_box(&f.partition), &f.layers, &config).unwrap())
            });
        }
    }
    group.finish();
}

fn counting(c: &mut Criterion) {
    let mut group = c.benchmark_group("count_crossings");
    for scale in [30, 100, 300] {
        let f = fixture(scale, 11);
        let d = run_pipeline_on(&f.partition, &f.layers, &PipelineConfig::default())
            .map(|o| o.drawing)
            .unwrap_or_else(|_| LayeredDrawing::from_layers(&f.layers));
        group.bench_with_input(BenchmarkId::from_parameter(f.size), &d, |b, d| {
            b.iter(|| count_crossings(black_box(d), &f.partition))
        });
    }
    group.finish();
}

fn exact(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact");
    group.sample_size(10);
    for scale in [3, 5] {
        let f = fixture(scale, 3);
        for rec in [false, true] {
            let id = BenchmarkId::new(if rec { "rec" } else { "free" }, f.size);
            group.bench_with_input(id, &f, |b, f| {
                b.iter(|| solve_exact(black_box(&f.partition), &f.layers, rec, 10_000))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, heuristic, counting, exact);
criterion_main!(benches);
