//! Throughput of the hot paths: discrete coefficients, series
//! evaluators, closed forms, and the singular integral.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use fourlag::kernel::{BetaSequence, PsiSequence};
use fourlag::{
    fourier_lagrange_coeffs, monte_carlo_sup, nodes, pointwise_error_general,
    pointwise_error_interp, poisson_pointwise, preset_row, sobolev_pointwise, Preset,
};

fn bench_discrete_coeffs(c: &mut Criterion) {
    let mut group = c.benchmark_group("fourier_lagrange_coeffs");
    for n in [8u32, 32, 128] {
        let samples: Vec<f64> = nodes(n)
            .unwrap()
            .into_iter()
            .map(|x| (3.0 * x).sin() + 0.2 * (7.0 * x).cos())
            .collect();
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| fourier_lagrange_coeffs(black_box(&samples), n).unwrap())
        });
    }
    group.finish();
}

fn bench_series(c: &mut Criterion) {
    let mut group = c.benchmark_group("pointwise_series");
    let geo = PsiSequence::geometric(0.9).unwrap();
    group.bench_function("geometric_q0.9_n4", |b| {
        b.iter(|| pointwise_error_interp(&geo, 4, black_box(0.31), 1e-12).unwrap())
    });
    let pow = PsiSequence::power(2.0).unwrap();
    group.bench_function("power_r2_n4", |b| {
        b.iter(|| pointwise_error_interp(&pow, 4, black_box(0.31), 1e-9).unwrap())
    });
    let mults = preset_row(Preset::Zero, 4).unwrap();
    group.bench_function("general_zero_geometric_n4", |b| {
        b.iter(|| pointwise_error_general(&geo, &mults, black_box(0.31), 1e-12).unwrap())
    });
    group.finish();
}

fn bench_closed_forms(c: &mut Criterion) {
    let mut group = c.benchmark_group("closed_forms");
    group.bench_function("poisson_pointwise", |b| {
        b.iter(|| poisson_pointwise(black_box(0.5), 6, black_box(0.4)).unwrap())
    });
    group.bench_function("weyl_quadrature_r0.75", |b| {
        b.iter(|| sobolev_pointwise(0.75, 2, black_box(0.4), 1e-8).unwrap())
    });
    group.finish();
}

fn bench_oracle(c: &mut Criterion) {
    let psi = PsiSequence::geometric(0.6).unwrap();
    let beta = BetaSequence::zero();
    let mults = preset_row(Preset::Interp, 2).unwrap();
    c.bench_function("monte_carlo_sup_16_samples", |b| {
        b.iter(|| monte_carlo_sup(&psi, &beta, &mults, black_box(0.9), 16, 8, 42).unwrap())
    });
}

criterion_group!(
    benches,
    bench_discrete_coeffs,
    bench_series,
    bench_closed_forms,
    bench_oracle
);
criterion_main!(benches);
