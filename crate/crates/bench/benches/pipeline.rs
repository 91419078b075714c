use criterion::{black_box, criterion_group, criterion_main, Criterion};
use skeleton_bench::{bipartite_curve, caterpillar_curve};
use skeleton_core::compute_skeleton;
use skeleton_core::moduli::{count_s_cones, covering_type, enumerate_trivalent_trees, DedupMode};
use skeleton_core::realize::{realize, CoveringDatum};
use skeleton_core::tree::{distance_matrix, neighbor_joining, separating_tree};

fn forward(c: &mut Criterion) {
    let mut group = c.benchmark_group("compute_skeleton");
    let bipartite = bipartite_curve();
    group.bench_function("K33 example", |b| b.iter(|| compute_skeleton(black_box(&bipartite))));
    for k in [8, 16] {
        let cfg = caterpillar_curve(7, k);
        group.bench_function(format!("caterpillar n=7 k={k}"), |b| {
            b.iter(|| compute_skeleton(black_box(&cfg)))
        });
    }
    group.finish();
}

fn trees(c: &mut Criterion) {
    let cfg = caterpillar_curve(5, 16);
    let points = cfg.points().to_vec();
    let affine: Vec<_> = points.into_iter().filter(|p| !p.is_infinity()).collect();
    let mut group = c.benchmark_group("trees");
    group.bench_function("separating tree k=16", |b| {
        b.iter(|| separating_tree(black_box(&affine)))
    });
    let d = distance_matrix(&affine).unwrap();
    group.bench_function("neighbor joining k=16", |b| b.iter(|| neighbor_joining(black_box(&d))));
    group.finish();
}

fn moduli(c: &mut Criterion) {
    let mut group = c.benchmark_group("moduli");
    group.sample_size(10);
    group.bench_function("S cones r=8 p=3", |b| {
        b.iter(|| count_s_cones(black_box(8), 3, DedupMode::Constrained, Some(1)))
    });
    let tree = enumerate_trivalent_trees(10).remove(0).to_metric_tree();
    let ramified = vec![true; tree.edges().len()];
    group.bench_function("covering type r=10 p=3", |b| {
        b.iter(|| covering_type(black_box(&tree), &ramified, 3))
    });
    group.finish();
}

fn realization(c: &mut Criterion) {
    let t = enumerate_trivalent_trees(8).remove(0);
    let tree = t.to_metric_tree();
    let datum = CoveringDatum {
        ramified: vec![true; tree.edges().len()],
        tree,
        p: 5,
        leaf_counts: t.leaves.clone(),
    };
    c.bench_function("realize r=8 p=5", |b| b.iter(|| realize(black_box(&datum))));
}

criterion_group!(benches, forward, trees, moduli, realization);
criterion_main!(benches);
