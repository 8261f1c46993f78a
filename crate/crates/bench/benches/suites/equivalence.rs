//! Isomorphism machinery: canonical affine keys, the full corpus census,
//! and the brute-force oracle it is checked against at desk scale.

use criterion::{criterion_group, Criterion};
use cyclesys::construct::{c5_mod1, c5_mod5, sts_from_split};
use cyclesys::cyclic::CycleSystem;
use cyclesys::equivalence::{affine_key, brute_force_isomorphic, census};
use cyclesys::skolem::{quick_sequence, Family};
use cyclesys::variants::class_variant;
use std::hint::black_box;

fn pentagon_class_corpus() -> Vec<CycleSystem> {
    let base = c5_mod1(1, None).unwrap().system;
    (1usize..=24).map(|i| class_variant(&base, &[i]).unwrap().expand()).collect()
}

fn keys(c: &mut Criterion) {
    let mut group = c.benchmark_group("equivalence/affine-key");
    let sts33 = sts_from_split(&quick_sequence(5, Family::Split).unwrap())
        .unwrap()
        .system
        .expand();
    group.bench_function("sts-v33", |b| b.iter(|| black_box(affine_key(&sts33).unwrap())));
    group.finish();
}

fn corpus_census(c: &mut Criterion) {
    let mut group = c.benchmark_group("equivalence/census");
    let corpus = pentagon_class_corpus();
    group.bench_function("pentagon-classes-v11", |b| {
        b.iter(|| black_box(census(&corpus).unwrap().nonisomorphic_lower_bound))
    });
    group.finish();
}

fn brute_force(c: &mut Criterion) {
    let mut group = c.benchmark_group("equivalence/brute-force");
    group.sample_size(20);
    let a = c5_mod5(1, None).unwrap().system;
    let first = class_variant(&a, &[1]).unwrap().expand();
    let second = class_variant(&a, &[17]).unwrap().expand();
    group.bench_function("pentagon-pair-v15", |b| {
        b.iter(|| black_box(brute_force_isomorphic(&first, &second).unwrap()))
    });
    group.finish();
}

criterion_group!(benches, keys, corpus_census, brute_force);
