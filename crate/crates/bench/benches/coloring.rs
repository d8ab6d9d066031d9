use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kneser_chroma::coloring::Construction;
use kneser_chroma::{
    build_ground_set, color_all, esym_prefix, exact_chromatic, verify_coloring, Field, GraphSpec,
    Property,
};

fn esym(c: &mut Criterion) {
    let mut group = c.benchmark_group("esym_prefix");
    for t in [4, 8] {
        let field = Field::binary(t).unwrap();
        let all: Vec<_> = field.elements().collect();
        group.bench_with_input(
            BenchmarkId::new("full_field", field.order()),
            &all,
            |b, z| b.iter(|| esym_prefix(&field, black_box(z), 4).unwrap()),
        );
    }
    group.finish();
}

fn coloring(c: &mut Criterion) {
    let mut group = c.benchmark_group("color_all");
    for (k, r, construction) in [
        (3, 2, Construction::FullField),
        (6, 3, Construction::FieldMinusZero),
        (7, 2, Construction::FullField),
    ] {
        let ground = build_ground_set(k, r, construction).unwrap();
        group.bench_function(format!("K2({},{k})", 2 * k + r), |b| {
            b.iter(|| color_all(black_box(&ground), k, r).unwrap())
        });
    }
    group.finish();
}

fn verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_coloring");
    group.sample_size(10);
    let ground = build_ground_set(6, 3, Construction::FieldMinusZero).unwrap();
    let spec = GraphSpec::kneser_square(15, 6).unwrap();
    for workers in [1, 4] {
        group.bench_with_input(BenchmarkId::new("K2(15,6)", workers), &workers, |b, &w| {
            b.iter(|| verify_coloring(&spec, &ground, 3, Property::SquareProper, w).unwrap())
        });
    }
    group.finish();
}

fn exact(c: &mut Criterion) {
    let spec = GraphSpec::kneser_square(7, 3).unwrap();
    c.bench_function("exact_chromatic/K2(7,3)", |b| {
        b.iter(|| exact_chromatic(black_box(&spec)).unwrap())
    });
}

criterion_group!(benches, esym, coloring, verify, exact);
criterion_main!(benches);
