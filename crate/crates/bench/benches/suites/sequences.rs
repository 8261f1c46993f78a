//! The enumeration core: full backtracking sweeps, the serial/parallel
//! count split, and the randomized-restart single-sequence search that
//! the constructors lean on.

use criterion::{criterion_group, BatchSize, Criterion};
use cyclesys::skolem::{
    count_sequences, count_sequences_parallel, enumerate_sequences, quick_sequence, Family,
    SkolemKind,
};
use std::hint::black_box;

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("sequences/enumerate");
    group.sample_size(20);
    // 12,808 hooked sequences; the visitor builds each one.
    group.bench_function("hooked-n10", |b| {
        b.iter(|| {
            let mut sum = 0u64;
            let count = enumerate_sequences(10, SkolemKind::Hooked, |seq| {
                sum += u64::from(seq.value(1));
            })
            .unwrap();
            black_box((count.count, sum))
        })
    });
    // 33,104 split sequences, counted without materializing.
    group.bench_function("split-n11-count", |b| {
        b.iter(|| black_box(count_sequences(11, SkolemKind::Split).unwrap().count))
    });
    group.finish();
}

fn parallel_count(c: &mut Criterion) {
    let mut group = c.benchmark_group("sequences/count-parallel");
    group.sample_size(10);
    group.bench_function("split-n12", |b| {
        b.iter(|| black_box(count_sequences_parallel(12, SkolemKind::Split).unwrap().count))
    });
    group.finish();
}

fn quick_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("sequences/quick");
    // One sequence of every order a constructor can ask for, both families.
    group.bench_function("whole-domain", |b| {
        b.iter_batched(
            || (),
            |()| {
                for n in 1..=63u32 {
                    for family in [Family::Skolem, Family::Split] {
                        if family == Family::Split && n == 1 {
                            continue;
                        }
                        black_box(quick_sequence(n, family).unwrap());
                    }
                }
            },
            BatchSize::SmallInput,
        )
    });
    group.finish();
}

criterion_group!(benches, enumeration, parallel_count, quick_search);
