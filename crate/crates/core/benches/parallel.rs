//! Data-parallel vs sequential sweep and scan.
//!
//! `ps_sweep`/`spectrum_scan` fan out across grid points or classes when the
//! `parallel` feature (default) is on; the `_serial` variants are the
//! always-available fallback. Run with `cargo bench`.

use criterion::{criterion_group, criterion_main, Criterion};
use std::f64::consts::PI;

use ampamp::engine::{
    default_k_cap, linspace_scales, ps_sweep, ps_sweep_serial, spectrum_scan, spectrum_scan_serial,
};
use ampamp::spectrum::{presets, CostSpectrum, WeightSet};
use num_rational::Rational64;

fn bench_sweep(c: &mut Criterion) {
    // 20-qubit signed instance, grid pinned to the resonance core so every
    // cell carries a comparable O(k_peak * D) load
    let spectrum = CostSpectrum::from_weights(&presets::signed_20()).unwrap();
    let targets = [Rational64::from_integer(-223)];
    let center = PI / 208.5;
    let grid = linspace_scales(center * 0.99, center * 1.01, 8);
    let k_cap = default_k_cap(20);

    let mut group = c.benchmark_group("sweep_signed20_8cells");
    group.sample_size(20);
    group.bench_function("parallel", |b| {
        b.iter(|| ps_sweep(&spectrum, &targets, &grid, PI, k_cap).unwrap())
    });
    group.bench_function("serial", |b| {
        b.iter(|| ps_sweep_serial(&spectrum, &targets, &grid, PI, k_cap).unwrap())
    });
    group.finish();
}

fn bench_scan(c: &mut Criterion) {
    let spectrum = CostSpectrum::from_weights(&WeightSet::ramp(16)).unwrap();
    let k_cap = default_k_cap(16);

    let mut group = c.benchmark_group("scan_ramp16_all_classes");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| spectrum_scan(&spectrum, PI, k_cap).unwrap())
    });
    group.bench_function("serial", |b| {
        b.iter(|| spectrum_scan_serial(&spectrum, PI, k_cap).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_sweep, bench_scan);
criterion_main!(benches);
