use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use powcol::coloring::{
    dsatur_chromatic_exact, greedy_power_coloring, natural_order, two_phase_power_coloring,
};
use powcol::graph::{gnp_sample_with, graph_power, DEFAULT_EDGE_CAP};
use powcol::metrics::{max_clique_exact, power_max_degree};
use powcol::theory::{degree_sum_pmf, lemma2_min_exact};
use powcol::{Graph, RandomSource, SamplingMode, TheoryParams};

fn sparse(n: usize, d: f64, seed: u64) -> Graph {
    gnp_sample_with(n, d / n as f64, &mut RandomSource::new(seed), SamplingMode::Skip)
}

fn sampling(c: &mut Criterion) {
    let mut group = c.benchmark_group("gnp_sample");
    for n in [10_000usize, 100_000] {
        group.bench_with_input(BenchmarkId::new("skip", n), &n, |b, &n| {
            b.iter(|| sparse(n, 2.0, 1))
        });
    }
    group.bench_function("dense/2000", |b| {
        b.iter(|| gnp_sample_with(2000, 0.001, &mut RandomSource::new(1), SamplingMode::Dense))
    });
    group.finish();
}

fn power(c: &mut Criterion) {
    let g = sparse(100_000, 2.0, 3);
    let mut group = c.benchmark_group("power");
    group.sample_size(10);
    for r in [2usize, 3] {
        group.bench_with_input(BenchmarkId::new("max_degree", r), &r, |b, &r| {
            b.iter(|| power_max_degree(black_box(&g), r))
        });
    }
    let small = sparse(5000, 3.0, 4);
    group.bench_function("explicit r=2 n=5000", |b| {
        b.iter(|| graph_power(black_box(&small), 2, DEFAULT_EDGE_CAP).unwrap())
    });
    group.finish();
}

fn coloring(c: &mut Criterion) {
    let g = sparse(2000, 2.0, 5);
    let order = natural_order(g.n());
    let mut group = c.benchmark_group("coloring");
    group.bench_function("greedy r=2 n=2000", |b| {
        b.iter(|| greedy_power_coloring(black_box(&g), 2, &order))
    });
    group.bench_function("two_phase r=2 n=2000", |b| {
        b.iter(|| two_phase_power_coloring(black_box(&g), 2))
    });
    let tiny = graph_power(&sparse(60, 3.0, 6), 2, DEFAULT_EDGE_CAP).unwrap();
    group.bench_function("dsatur exact G^2 n=60", |b| {
        b.iter(|| dsatur_chromatic_exact(black_box(&tiny), 5_000_000).unwrap())
    });
    let p = graph_power(&sparse(150, 3.0, 7), 3, DEFAULT_EDGE_CAP).unwrap();
    group.bench_function("clique exact G^3 n=150", |b| {
        b.iter(|| max_clique_exact(black_box(&p), 5_000_000).unwrap())
    });
    group.finish();
}

fn theory(c: &mut Criterion) {
    let mut group = c.benchmark_group("theory");
    for (total, r) in [(1000u64, 2usize), (200, 3), (60, 4)] {
        group.bench_function(format!("lemma2 D={total} r={r}"), |b| {
            b.iter(|| lemma2_min_exact(black_box(total), r).unwrap())
        });
    }
    let params = TheoryParams::new(100_000, 2.0, 3, 0.1).unwrap();
    group.bench_function("pmf r=3 D=40", |b| {
        b.iter(|| degree_sum_pmf(black_box(&params), 40).unwrap())
    });
    group.finish();
}

criterion_group!(benches, sampling, power, coloring, theory);
criterion_main!(benches);
