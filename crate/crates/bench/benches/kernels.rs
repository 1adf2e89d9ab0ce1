use criterion::{black_box, criterion_group, criterion_main, Criterion};

use rankforge::linalg::{det_exact, rank_exact};
use rankforge::{canonical_form, enumerate_extremal, graph_rank, independence_number, EnumerationOptions, GraphClass};
use rankforge_bench::{b_graph, c_graph, pseudo_random_matrix};

fn linalg(c: &mut Criterion) {
    let c12 = c_graph(12);
    c.bench_function("graph_rank C_12", |b| b.iter(|| graph_rank(black_box(&c12))));
    let m = pseudo_random_matrix(24, 7);
    c.bench_function("rank_exact 24x24", |b| b.iter(|| rank_exact(black_box(&m)).unwrap()));
    c.bench_function("det_exact 24x24", |b| b.iter(|| det_exact(black_box(&m))));
}

fn graphs(c: &mut Criterion) {
    let c12 = c_graph(12);
    let b5 = b_graph(5);
    c.bench_function("alpha C_12", |b| b.iter(|| independence_number(black_box(&c12))));
    c.bench_function("canonical_form C_12", |b| b.iter(|| canonical_form(black_box(&c12))));
    c.bench_function("canonical_form B_5", |b| b.iter(|| canonical_form(black_box(&b5))));
}

fn enumeration(c: &mut Criterion) {
    let opts = EnumerationOptions {
        jobs: Some(1),
        ..Default::default()
    };
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(10);
    for class in [GraphClass::TriangleFreeNonBipartite, GraphClass::Bipartite] {
        group.bench_function(format!("rank 6 {class}"), |b| {
            b.iter(|| enumerate_extremal(6, class, &opts).unwrap())
        });
    }
    group.bench_function("rank 8 triangle-free-non-bipartite", |b| {
        b.iter(|| enumerate_extremal(8, GraphClass::TriangleFreeNonBipartite, &opts).unwrap())
    });
    group.finish();
}

criterion_group!(benches, linalg, graphs, enumeration);
criterion_main!(benches);
