use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use nuca_core::catalog;
use nuca_core::density::{natural_density, LatticeSet};
use nuca_core::engine::{image_window, preinjectivity_witness, Cylinder};
use nuca_core::entropy::theorem_b_window_certificate;
use nuca_core::linear::mdim_sequence;
use nuca_core::quasitiling::construct;
use nuca_core::sft::periodic_approximation_check;
use nuca_core::{BoxFolner, Budget, Dim, FiniteSet, Rational};

fn engine(c: &mut Criterion) {
    let b = Budget::default();
    let t = catalog::example1();
    c.bench_function("image_window example1 [-6,6]", |bench| {
        bench.iter(|| image_window(&t, black_box(&FiniteSet::interval(-6, 6)), None, &b).unwrap())
    });
    let tau = catalog::example2_tau();
    c.bench_function("image_window example2 [-1,1]^2", |bench| {
        bench.iter(|| image_window(&tau, black_box(&FiniteSet::rect(-1, 1, -1, 1)), None, &b).unwrap())
    });
    c.bench_function("preinjectivity_witness example1 (3,4)", |bench| {
        bench.iter(|| preinjectivity_witness(&t, &Cylinder::full(Dim::One), 3, 4, &b).unwrap())
    });
    let e3 = catalog::example3();
    c.bench_function("certificate example3 [0,5]", |bench| {
        bench.iter(|| theorem_b_window_certificate(&e3, &Cylinder::full(Dim::One), &FiniteSet::interval(0, 5), 0, &b).unwrap())
    });
}

fn analysis(c: &mut Criterion) {
    let b = Budget::default();
    let set = LatticeSet::union(vec![
        LatticeSet::progression(4, 1).unwrap(),
        LatticeSet::complement(LatticeSet::progression(6, 0).unwrap()),
    ]);
    c.bench_function("natural_density union n=64", |bench| {
        bench.iter(|| natural_density(black_box(&set), &BoxFolner::centered(Dim::One), 64).unwrap())
    });
    let id3 = catalog::linear_identity_off(3);
    c.bench_function("mdim_sequence identity off 3Z n=40", |bench| {
        bench.iter(|| mdim_sequence(&id3, &BoxFolner::centered(Dim::One), 40, &b).unwrap())
    });
    let gm = catalog::golden_mean();
    c.bench_function("periodic_approximation golden mean (2,1,3)", |bench| {
        bench.iter(|| periodic_approximation_check(&gm, 2, 1, 3, &b).unwrap())
    });
    let shapes: Vec<FiniteSet> = [30, 60, 120].iter().map(|&l| FiniteSet::interval(0, l - 1)).collect();
    let region = FiniteSet::interval(0, 10_000);
    c.bench_function("quasitiling construct [0,10^4]", |bench| {
        bench.iter(|| construct(&shapes, Rational::new(1, 10), &FiniteSet::interval(-1, 1), &region).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = engine, analysis
}
criterion_main!(benches);
