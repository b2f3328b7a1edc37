use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use polygraph_core::counterexample::{build_paper_objects, verify_counterexample};
use polygraph_core::{check_pullback_square, enumerate_cells, normalize, Cell2Term};

fn cells(c: &mut Criterion) {
    let product = build_paper_objects().product.computad;
    let mut group = c.benchmark_group("enumerate_cells");
    for k in [3, 6, 9] {
        group.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| {
            b.iter(|| enumerate_cells(black_box(&product), k).unwrap())
        });
    }
    group.finish();
}

fn pullback_check(c: &mut Criterion) {
    let scene = build_paper_objects();
    let mut group = c.benchmark_group("cell_square");
    for k in [3, 5] {
        let square = scene.cell_square(k).unwrap();
        group.bench_with_input(BenchmarkId::new("check", k), &square, |b, sq| {
            b.iter(|| check_pullback_square(black_box(sq)))
        });
    }
    group.finish();
}

fn counterexample(c: &mut Criterion) {
    c.bench_function("verify_counterexample/3", |b| {
        b.iter(|| verify_counterexample(black_box(3)).unwrap())
    });
}

fn normal_forms(c: &mut Criterion) {
    let product = build_paper_objects().product.computad;
    // a balanced term with 2^10 leaves
    let gens = ["<a1,b1>", "<a1,b2>", "<a2,b1>", "<a2,b2>"];
    let mut layer: Vec<Cell2Term> = (0..1024).map(|i| Cell2Term::gen(gens[i % 4])).collect();
    let mut vertical = true;
    while layer.len() > 1 {
        layer = layer
            .chunks(2)
            .map(|p| {
                let (a, b) = (p[0].clone(), p[1].clone());
                if vertical {
                    a.v(b)
                } else {
                    a.h(b)
                }
            })
            .collect();
        vertical = !vertical;
    }
    let term = layer.pop().unwrap();
    c.bench_function("normalize/1024-leaves", |b| {
        b.iter(|| normalize(black_box(&term), &product).unwrap())
    });
}

criterion_group!(benches, cells, pullback_check, counterexample, normal_forms);
criterion_main!(benches);
