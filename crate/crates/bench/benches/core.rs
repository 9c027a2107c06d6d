use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use littlewood_bench::{ball_forms, sample_forms};
use littlewood_core::{
    classify, grid_scan, littlewood_ratio, monomax_check, norm_complex_real_coeffs, norm_real,
    oracle_norm_complex, split_witness, PhaseGridConfig, ScalarField, ScanConfig,
};

fn norms(c: &mut Criterion) {
    let forms = sample_forms(1024);
    let mut g = c.benchmark_group("norm");
    g.bench_function("real", |b| {
        b.iter(|| {
            forms
                .iter()
                .map(|t| norm_real(black_box(t)).value)
                .sum::<f64>()
        })
    });
    g.bench_function("complex_closed_form", |b| {
        b.iter(|| {
            forms
                .iter()
                .map(|t| norm_complex_real_coeffs(black_box(t)).value)
                .sum::<f64>()
        })
    });
    let cfg = PhaseGridConfig::default();
    g.bench_function("complex_oracle", |b| {
        b.iter(|| oracle_norm_complex(black_box(&forms[7]), &cfg))
    });
    g.finish();
}

fn geometry(c: &mut Criterion) {
    let forms = ball_forms(1024);
    c.bench_function("split_witness", |b| {
        b.iter(|| {
            forms
                .iter()
                .filter(|t| split_witness(black_box(t)).is_ok())
                .count()
        })
    });
    c.bench_function("classify", |b| {
        b.iter(|| {
            forms
                .iter()
                .filter(|t| classify(black_box(t), 1e-9).is_ok())
                .count()
        })
    });
}

fn ratios(c: &mut Criterion) {
    let forms = sample_forms(1024);
    let mut g = c.benchmark_group("ratio");
    for field in [ScalarField::Real, ScalarField::ComplexRealCoeffs] {
        g.bench_with_input(
            BenchmarkId::from_parameter(format!("{field:?}")),
            &field,
            |b, &f| {
                b.iter(|| {
                    forms
                        .iter()
                        .map(|t| littlewood_ratio(black_box(t), f).map_or(0.0, |r| r.ratio))
                        .fold(0.0, f64::max)
                })
            },
        );
    }
    g.finish();
}

fn scans(c: &mut Criterion) {
    let mut g = c.benchmark_group("grid_scan");
    g.sample_size(10);
    for step in [0.5, 0.25] {
        let cfg = ScanConfig::new(step, ScalarField::ComplexRealCoeffs);
        g.bench_with_input(BenchmarkId::from_parameter(step), &cfg, |b, cfg| {
            b.iter(|| grid_scan(black_box(cfg)).unwrap().max_ratio)
        });
    }
    g.finish();
}

fn lemmata(c: &mut Criterion) {
    c.bench_function("monomax_check", |b| {
        b.iter(|| {
            monomax_check(
                black_box(1.0),
                black_box(-0.3),
                black_box(0.7),
                black_box(2.0),
            )
        })
    });
}

criterion_group!(benches, norms, geometry, ratios, scans, lemmata);
criterion_main!(benches);
