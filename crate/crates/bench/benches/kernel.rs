use std::sync::Arc;

use cobord_core::classifying::{compare_with_gl, ring_bgl, ring_bsl, slice_window, weyl_invariants, PermutationGroup};
use cobord_core::{FglTable, GradedSeries, LazardBasisTable, LazardRing, VarSet};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn lazard_build(c: &mut Criterion) {
    let mut g = c.benchmark_group("lazard_build");
    g.sample_size(10);
    for n in [4usize, 6, 8] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| LazardBasisTable::build(black_box(n)).unwrap())
        });
    }
    g.finish();
}

fn series_mul(c: &mut Criterion) {
    let table = Arc::new(LazardBasisTable::build(6).unwrap());
    let law = FglTable::universal(6, table).unwrap();
    let mut g = c.benchmark_group("series");
    for n in [2usize, 3] {
        let roots = VarSet::chern_roots(n);
        let ring = law.ring().clone();
        let mut x = GradedSeries::zero(ring.clone(), roots.clone(), 6);
        for k in 0..n {
            x = law.sum(&x, &GradedSeries::var(ring.clone(), roots.clone(), 6, k)).unwrap();
        }
        g.bench_with_input(BenchmarkId::new("square_of_determinant_class", n), &x, |b, x| {
            b.iter(|| x.mul(black_box(x)).unwrap())
        });
    }
    g.bench_function("n_series_5", |b| b.iter(|| law.n_series(black_box(5), 6).unwrap()));
    g.finish();
}

fn classifying(c: &mut Criterion) {
    let table = Arc::new(LazardBasisTable::build(6).unwrap());
    let l = LazardRing::new(table.clone());
    let law = FglTable::universal(5, table).unwrap();
    let mut g = c.benchmark_group("classifying");
    g.sample_size(10);
    g.bench_function("weyl_gl3_d6", |b| {
        b.iter(|| {
            let gl = ring_bgl(l.clone(), 3, 6, &[]).unwrap();
            let inv = weyl_invariants(&PermutationGroup::symmetric(3), &l, gl.roots(), &slice_window(6, 6)).unwrap();
            compare_with_gl(&gl, &inv).unwrap()
        })
    });
    g.bench_function("bsl3_d5", |b| b.iter(|| ring_bsl(&law, 3, 5, &[-1, 0, 1]).unwrap()));
    g.finish();
}

criterion_group!(benches, lazard_build, series_mul, classifying);
criterion_main!(benches);
