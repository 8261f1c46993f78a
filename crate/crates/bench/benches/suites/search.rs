//! The backtracking fallback: a mid-size constructive search, the printed-
//! formula replacement the ledger leans on, and the exhaustive (9,3)
//! nonexistence certificate.

use criterion::{criterion_group, Criterion};
use cyclesys::construct::{search_fallback, searched_system, SearchBudget, SearchShape};
use cyclesys::construct::SearchOutcome;
use std::hint::black_box;

fn constructive(c: &mut Criterion) {
    let mut group = c.benchmark_group("search/constructive");
    group.sample_size(20);
    let budget = SearchBudget::default();
    // 696 nodes: the five full-orbit triple starters on 31 vertices.
    group.bench_function("triples-v31", |b| {
        b.iter(|| {
            let (outcome, sys) = searched_system(31, 3, &budget).unwrap();
            assert!(matches!(outcome, SearchOutcome::Found { .. }));
            black_box(sys.unwrap().system.starters().len())
        })
    });
    // ~51k nodes: the replacement for the failing printed v=57 formula.
    group.bench_function("heptagons-v57", |b| {
        b.iter(|| {
            let (outcome, sys) = searched_system(57, 7, &budget).unwrap();
            assert!(matches!(outcome, SearchOutcome::Found { .. }));
            black_box(sys.unwrap().system.starters().len())
        })
    });
    group.finish();
}

fn exhaustive(c: &mut Criterion) {
    let mut group = c.benchmark_group("search/exhaustive");
    let budget = SearchBudget::default();
    group.bench_function("no-9-3-system", |b| {
        b.iter(|| {
            let outcome = search_fallback(9, 3, &SearchShape::default(), &budget).unwrap();
            assert!(matches!(outcome, SearchOutcome::Nonexistent { .. }));
            black_box(outcome.nodes())
        })
    });
    group.finish();
}

criterion_group!(benches, constructive, exhaustive);
