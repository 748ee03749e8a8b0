//! Sequential versus data-parallel execution of the bulk entry points:
//! spininess over random spine systems, nilpotency filtering of a group
//! nerve, and the iterated reflection of a tall ladder.

use criterion::{criterion_group, criterion_main, Criterion};
use finsym::constructions::{b_q_with, ladder};
use finsym::group::FiniteGroup;
use finsym::reflect::reflect_with;
use finsym::spiny::{is_spiny_with, SpineChoice};
use finsym::symset::nerve_group;
use finsym::Exec;

fn bench_spiny(c: &mut Criterion) {
    let x = nerve_group(&FiniteGroup::symmetric(3), 4);
    let choice = SpineChoice::Random { seed: 7, count: 8 };
    let mut group = c.benchmark_group("spiny/random-spines/s3-nerve-trunc4");
    for (label, exec) in [("seq", Exec::Seq), ("par", Exec::Par)] {
        group.bench_function(label, |b| {
            b.iter(|| is_spiny_with(&x, &choice, exec).unwrap());
        });
    }
    group.finish();
}

fn bench_nilpotency_filter(c: &mut Criterion) {
    let s4 = FiniteGroup::symmetric(4);
    let mut group = c.benchmark_group("b_q/commuting-chains/s4-trunc3");
    for (label, exec) in [("seq", Exec::Seq), ("par", Exec::Par)] {
        group.bench_function(label, |b| {
            b.iter(|| b_q_with(&s4, 2, 3, exec));
        });
    }
    group.finish();
}

fn bench_reflect(c: &mut Criterion) {
    let x = ladder(8, 2).unwrap();
    let mut group = c.benchmark_group("reflect/ladder8-trunc2");
    for (label, exec) in [("seq", Exec::Seq), ("par", Exec::Par)] {
        group.bench_function(label, |b| {
            b.iter(|| reflect_with(&x, None, exec).unwrap());
        });
    }
    group.finish();
}

criterion_group!(benches, bench_spiny, bench_nilpotency_filter, bench_reflect);
criterion_main!(benches);
