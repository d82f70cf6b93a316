use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use bider_core::biderivations::{bider_space, right_bider_bilinear_space};
use bider_core::bilinear::{heisenberg_b1, heisenberg_b2};
use bider_core::brackets::verify_section4;
use bider_core::derivations::derivation_space;
use bider_core::linalg::rref;
use bider_core::sampling::Sampler;
use bider_core::{rhd, Algebra, PolyRightMap};

fn linear_algebra(c: &mut Criterion) {
    let mut s = Sampler::new(0);
    let m = {
        let rows: Vec<Vec<_>> = (0..12)
            .map(|_| (0..16).map(|_| s.rational()).collect())
            .collect();
        bider_core::RationalMatrix::from_rows(rows).unwrap()
    };
    c.bench_function("rref_12x16", |b| b.iter(|| rref(black_box(&m))));
}

fn spaces(c: &mut Criterion) {
    let mut g = c.benchmark_group("spaces");
    for name in ["heisenberg3", "sl2", "abelian(4)"] {
        let a = Algebra::builtin(name).unwrap();
        g.bench_with_input(BenchmarkId::new("derivations", name), &a, |b, a| {
            b.iter(|| derivation_space(a))
        });
        g.bench_with_input(BenchmarkId::new("right", name), &a, |b, a| {
            b.iter(|| right_bider_bilinear_space(a))
        });
        g.bench_with_input(BenchmarkId::new("two_sided", name), &a, |b, a| {
            b.iter(|| bider_space(a))
        });
    }
    g.finish();
}

fn brackets(c: &mut Criterion) {
    let b1 = PolyRightMap::from_tensor(&heisenberg_b1());
    let b2 = PolyRightMap::from_tensor(&heisenberg_b2());
    c.bench_function("rhd_heisenberg", |b| {
        b.iter(|| rhd(black_box(&b1), black_box(&b2)))
    });
    let mut g = c.benchmark_group("transpose_suite");
    g.sample_size(10);
    g.bench_function("sl2", |b| b.iter(|| verify_section4(&Algebra::sl2())));
    g.finish();
}

criterion_group!(benches, linear_algebra, spaces, brackets);
criterion_main!(benches);
