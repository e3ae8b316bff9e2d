//! Sequential against rayon-parallel evaluation of the hot loops.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use meander::enumerate::{count, enumerate_with, EnumerationQuery, ExecMode};
use meander::surface::Component;
use meander::verify::{lift_oracle, Case};
use meander::Kind;

const MODES: [(&str, ExecMode); 2] = [("sequential", ExecMode::Sequential), ("parallel", ExecMode::Parallel)];

fn closed_counts(c: &mut Criterion) {
    let mut g = c.benchmark_group("count_closed");
    g.sample_size(10);
    for n in [10, 12] {
        for (name, mode) in MODES {
            g.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| b.iter(|| count(Kind::Closed, black_box(n), mode)));
        }
    }
    g.finish();
}

fn semi_enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_semi");
    g.sample_size(10);
    let q = EnumerationQuery::new(Kind::DoublyAnchoredSemi, 8).shared_anchors(true);
    for (name, mode) in MODES {
        g.bench_function(name, |b| b.iter(|| enumerate_with(black_box(&q), mode).len()));
    }
    g.finish();
}

fn lift_search(c: &mut Criterion) {
    let mut g = c.benchmark_group("lift_oracle");
    g.sample_size(10);
    let row = Component::FixedZeroAndPair { j: 1, k: 1 };
    for (name, mode) in MODES {
        g.bench_function(name, |b| b.iter(|| lift_oracle(row, Case::OneSep, 8, mode).min_squares));
    }
    g.finish();
}

criterion_group!(benches, closed_counts, semi_enumeration, lift_search);
criterion_main!(benches);
