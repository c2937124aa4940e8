use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use trilin::iso::canonical_form;
use trilin::tlg::{line_graph, triangular_line_graph};
use trilin_bench::random_graph;

fn operators(c: &mut Criterion) {
    let mut group = c.benchmark_group("operators");
    for n in [50, 200] {
        let g = random_graph(n, 0.1, 7);
        group.bench_with_input(BenchmarkId::new("T", n), &g, |b, g| b.iter(|| triangular_line_graph(black_box(g))));
        group.bench_with_input(BenchmarkId::new("L", n), &g, |b, g| b.iter(|| line_graph(black_box(g))));
    }
    group.finish();
}

fn canonical(c: &mut Criterion) {
    let g = random_graph(12, 0.4, 3);
    c.bench_function("canonical-form-12", |b| b.iter(|| canonical_form(black_box(&g)).unwrap()));
}

criterion_group!(benches, operators, canonical);
criterion_main!(benches);
