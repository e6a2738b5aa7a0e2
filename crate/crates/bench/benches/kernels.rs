use criterion::{black_box, criterion_group, criterion_main, Criterion};

use matpoly_bench::{graph_instance, k4_instance};
use matpoly_core::ehrhart::ehrhart_polynomial;
use matpoly_core::ehrhart::todd::todd_eval;
use matpoly_core::heuristics::{btrpt, local_search};
use matpoly_core::oracles::{enumerate_bases, spanning_trees};
use matpoly_core::uniform::hstar_uniform;
use matpoly_core::{Caps, Objective, Rational, Searcher};

fn oracles(c: &mut Criterion) {
    let inst = graph_instance(7, 7);
    let caps = Caps::default();
    c.bench_function("enumerate_bases/graph7", |b| b.iter(|| enumerate_bases(black_box(&inst.matroid), &caps).unwrap()));
    c.bench_function("spanning_trees/graph7", |b| b.iter(|| spanning_trees(black_box(&inst.matroid), &caps).unwrap()));
}

fn ehrhart(c: &mut Criterion) {
    let inst = k4_instance();
    let caps = Caps::default();
    c.bench_function("ehrhart_polynomial/k4", |b| b.iter(|| ehrhart_polynomial(black_box(&inst.matroid), &caps).unwrap()));
    let xis: Vec<Rational> = (1..=6).map(|i| Rational::new(i.into(), 7.into())).collect();
    c.bench_function("todd_eval/6", |b| b.iter(|| todd_eval(6, black_box(&xis))));
    c.bench_function("hstar_uniform/30_4", |b| b.iter(|| hstar_uniform(black_box(30), 4).unwrap()));
}

fn search(c: &mut Criterion) {
    let inst = graph_instance(3, 8);
    let start = inst.matroid.first_basis();
    let f = Objective::linear(&[1, 2]);
    c.bench_function("local_search/graph8", |b| b.iter(|| local_search(&inst.matroid, &inst.weights, &f, black_box(&start)).unwrap()));
    c.bench_function("btrpt/graph8", |b| b.iter(|| btrpt(&inst.matroid, &inst.weights, 3, Searcher::Local, black_box(5), 1).unwrap()));
}

criterion_group!(benches, oracles, ehrhart, search);
criterion_main!(benches);
