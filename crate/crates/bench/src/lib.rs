//! Criterion benchmarks for the rewriting, simplification and Smith normal
//! form stages. `benches/pipeline.rs` only wires them up.

use criterion::{black_box, BenchmarkId, Criterion};
use schreierkit::rschreier::{derived_subgroup, DEFAULT_MAX_INDEX};
use schreierkit::{
    abelian_invariants, relation_matrix, simplify, smith_normal_form, twin_group, Presentation, SimplificationBudget,
};

const SIZES: [usize; 3] = [5, 6, 7];

fn raw_derived(n: usize) -> Presentation {
    derived_subgroup(&twin_group(n).expect("n >= 2"), DEFAULT_MAX_INDEX)
        .expect("index within limit")
        .presentation
}

pub fn reidemeister_schreier(c: &mut Criterion) {
    let mut group = c.benchmark_group("derived_subgroup");
    for n in SIZES {
        let tw = twin_group(n).expect("n >= 2");
        group.bench_with_input(BenchmarkId::from_parameter(n), &tw, |b, tw| {
            b.iter(|| derived_subgroup(black_box(tw), DEFAULT_MAX_INDEX).expect("index within limit"))
        });
    }
    group.finish();
}

pub fn tietze(c: &mut Criterion) {
    let mut group = c.benchmark_group("simplify");
    group.sample_size(10);
    for n in SIZES {
        let p = raw_derived(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &p, |b, p| {
            b.iter(|| simplify(black_box(p), SimplificationBudget::default()))
        });
    }
    group.finish();
}

pub fn smith(c: &mut Criterion) {
    let mut group = c.benchmark_group("smith_normal_form");
    for n in SIZES {
        let m = relation_matrix(&raw_derived(n));
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| smith_normal_form(black_box(m))));
    }
    group.finish();
}

pub fn end_to_end(c: &mut Criterion) {
    c.bench_function("tw6_abelianization_after_simplify", |b| {
        b.iter(|| {
            let p = simplify(&raw_derived(black_box(6)), SimplificationBudget::default()).presentation;
            abelian_invariants(&p)
        })
    });
}

pub fn benchmarks(c: &mut Criterion) {
    reidemeister_schreier(c);
    tietze(c);
    smith(c);
    end_to_end(c);
}
