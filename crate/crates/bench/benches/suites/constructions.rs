//! The build-expand-validate pipeline at the largest desk-scale orders the
//! acceptance gate sweeps.

use criterion::{criterion_group, Criterion};
use cyclesys::construct::{assemble_ck_modk, c5_mod1, sts_from_split, SearchBudget};
use cyclesys::cyclic::validate_cycle_system;
use cyclesys::skolem::{quick_sequence, Family};
use std::hint::black_box;

fn pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("constructions/pipeline");
    group.sample_size(20);

    let split50 = quick_sequence(50, Family::Split).unwrap();
    group.bench_function("triples-v303", |b| {
        b.iter(|| {
            let made = sts_from_split(&split50).unwrap();
            let sys = made.system.expand();
            assert!(validate_cycle_system(&sys).is_valid());
            black_box(sys.cycles().len())
        })
    });

    let skolem50 = quick_sequence(50, Family::Skolem).unwrap();
    group.bench_function("pentagons-v501", |b| {
        b.iter(|| {
            let made = c5_mod1(50, Some(&skolem50)).unwrap();
            let sys = made.system.expand();
            assert!(validate_cycle_system(&sys).is_valid());
            black_box(sys.cycles().len())
        })
    });

    let split7 = quick_sequence(7, Family::Split).unwrap();
    let budget = SearchBudget::default();
    group.bench_function("assembled-k13-v195", |b| {
        b.iter(|| {
            let made = assemble_ck_modk(&split7, 13, None, &budget).unwrap();
            let sys = made.system.expand();
            assert!(validate_cycle_system(&sys).is_valid());
            black_box(sys.cycles().len())
        })
    });

    group.finish();
}

criterion_group!(benches, pipeline);
