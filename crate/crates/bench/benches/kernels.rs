use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use popuc_bench::{bernstein_szego_r_sweep, grid, sample_popuc, single_moment_moments, verblunsky};
use popuc_core::opuc::szego_levinson;
use popuc_core::popuc::{char_poly, ggt, zeros};
use popuc_core::trajectory::{sweep, SweepOptions};
use popuc_core::{BRule, Complex64};

fn levinson(c: &mut Criterion) {
    let mut group = c.benchmark_group("szego_levinson");
    for n in [8, 32, 128] {
        let m = single_moment_moments(0.5, n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| b.iter(|| szego_levinson(black_box(&m), n).unwrap()));
    }
    group.finish();
}

fn popuc_zeros(c: &mut Criterion) {
    let mut group = c.benchmark_group("zeros");
    for n in [8, 16, 30] {
        let p = sample_popuc(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &p, |b, p| b.iter(|| zeros(black_box(p)).unwrap()));
    }
    group.finish();
}

fn ggt_char_poly(c: &mut Criterion) {
    let a = verblunsky(24);
    let bb = Complex64::from_polar(1.0, 0.3);
    c.bench_function("ggt_char_poly/25", |b| b.iter(|| char_poly(&ggt(black_box(&a), bb).unwrap())));
}

fn bs_sweep(c: &mut Criterion) {
    let f = bernstein_szego_r_sweep();
    let t = grid(0.1, 0.9, 41);
    let opts = SweepOptions::default();
    let mut group = c.benchmark_group("sweep");
    group.sample_size(20);
    group.bench_function("bernstein_szego_n15", |b| {
        b.iter(|| sweep(&f, black_box(&t), 15, BRule::FixedZero(Complex64::new(1.0, 0.0)), &opts).unwrap())
    });
    group.finish();
}

criterion_group!(benches, levinson, popuc_zeros, ggt_char_poly, bs_sweep);
criterion_main!(benches);
