//! Benchmarks for the hot paths: exchange canonicalization, quasi-reduction,
//! and join search on a divergent branching.

use criterion::{criterion_group, criterion_main, Criterion};
use linrew_core::confluence::{joinable, local_branchings};
use linrew_core::diagram::{Monomial, Slice};
use linrew_core::lincomb::LinComb;
use linrew_core::presets::{preset_aobbar, preset_sigma_ex};
use linrew_core::rewrite::Engine;
use linrew_core::word::Word;
use std::hint::black_box;
use std::sync::Arc;

/// A 6-slice diagram with plenty of exchange freedom: three bubbles spread
/// across two ambient strands.
fn wide_monomial(engine: &Engine) -> Monomial {
    let c = engine.polygraph.generator("c").unwrap();
    let d = engine.polygraph.generator("d").unwrap();
    let w = |s: &str| Word::parse(s).unwrap();
    Monomial::new(
        w("^^"),
        vec![
            Slice::new(w(""), c.clone(), w("^^")),
            Slice::new(w("^v^"), c.clone(), w("^")),
            Slice::new(w("^v^^v"), c.clone(), w("^")),
            Slice::new(w("^"), d.clone(), w("^^v^v^")),
            Slice::new(w("^^"), d.clone(), w("^v^")),
            Slice::new(w("^^^"), d, w("^")),
        ],
    )
    .unwrap()
}

fn bench_canonicalize(crit: &mut Criterion) {
    let engine = Engine::new(Arc::new(preset_aobbar(2).unwrap()));
    let m = wide_monomial(&engine);
    let src = m.src().clone();
    let rows: Vec<Slice> = m.slices().to_vec();
    crit.bench_function("canonicalize_6_slices", |b| {
        b.iter(|| Monomial::new(black_box(src.clone()), black_box(rows.clone())).unwrap())
    });
}

fn bench_quasi_reduce(crit: &mut Criterion) {
    let engine = Engine::new(Arc::new(preset_aobbar(2).unwrap()));
    // A curl with a dot: several rule families fire before quiescence.
    let c = engine.polygraph.generator("c").unwrap();
    let x = engine.polygraph.generator("x").unwrap();
    let d = engine.polygraph.generator("d").unwrap();
    let w = |s: &str| Word::parse(s).unwrap();
    let m = Monomial::new(
        w("^"),
        vec![
            Slice::new(w(""), c, w("^")),
            Slice::new(w(""), x, w("v^")),
            Slice::new(w("^"), d, w("")),
        ],
    )
    .unwrap();
    let cell = LinComb::from_monomial(m);
    crit.bench_function("quasi_reduce_dotted_curl", |b| {
        b.iter(|| engine.quasi_reduce(black_box(&cell), 10_000).unwrap())
    });
}

fn bench_joinable(crit: &mut Criterion) {
    let engine = Engine::new(Arc::new(preset_sigma_ex().unwrap()));
    let cup = engine.polygraph.generator("cup").unwrap();
    let cap = engine.polygraph.generator("cap").unwrap();
    let w = |s: &str| Word::parse(s).unwrap();
    // Two stacked sliding windows sharing the middle cup/cap pair.
    let m = Monomial::new(
        w("^"),
        vec![
            Slice::new(w("^"), cup.clone(), w("")),
            Slice::new(w("^"), cap.clone(), w("^")),
            Slice::new(w("^"), cup, w("")),
            Slice::new(w("^"), cap, w("^")),
        ],
    )
    .unwrap();
    let cell = LinComb::from_monomial(m);
    let branchings = local_branchings(&engine, &cell).unwrap();
    crit.bench_function("joinable_overlapping_slides", |b| {
        b.iter(|| {
            for br in &branchings {
                black_box(joinable(&engine, br, 8, 100).unwrap());
            }
        })
    });
}

criterion_group!(benches, bench_canonicalize, bench_quasi_reduce, bench_joinable);
criterion_main!(benches);
