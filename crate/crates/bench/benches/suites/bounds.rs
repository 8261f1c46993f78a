//! Certified double-double margin evaluation: single margins and the full
//! windowed threshold sweep the acceptance gate runs at width 5000.

use criterion::{criterion_group, Criterion};
use cyclesys::bounds::{catalog, FormulaId};
use std::hint::black_box;

fn single_margins(c: &mut Criterion) {
    let mut group = c.benchmark_group("bounds/margin");
    let claims = catalog();
    let totient = claims.iter().find(|cl| cl.id == FormulaId::StsResidue28).unwrap();
    let linear = claims.iter().find(|cl| cl.id == FormulaId::CkModkGeneral).unwrap();
    // 4448 = 24 (mod 28) sits in the dense residue class the formula covers.
    group.bench_function("totient-denominator", |b| {
        b.iter(|| black_box(totient.margin(black_box(4448)).unwrap().to_f64()))
    });
    group.bench_function("linear-denominator", |b| {
        b.iter(|| black_box(linear.margin(black_box(5000)).unwrap().to_f64()))
    });
    group.finish();
}

fn window_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("bounds/verify-threshold");
    group.sample_size(10);
    let claims = catalog();
    group.bench_function("all-claims-window-5000", |b| {
        b.iter(|| {
            let mut worst = f64::INFINITY;
            for claim in &claims {
                let report = claim.verify_threshold(5000);
                assert!(report.pass);
                worst = worst.min(report.min_margin);
            }
            black_box(worst)
        })
    });
    group.finish();
}

criterion_group!(benches, single_margins, window_sweep);
