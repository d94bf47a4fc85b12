use criterion::{black_box, criterion_group, criterion_main, Criterion};

use qbailey::bailey::{chain_iterate, initial_pair, verify_bailey_pair};
use qbailey::configsum::{x_bosonic, x_fermionic, ConfigSumQuery, PPPair};
use qbailey::pipeline::{andrews_gordon, rogers_ramanujan, AgRoute};
use qbailey::qcore::{inv_q_infinite, q_binomial};
use qbailey::stringfn::{string_function, StringFunctionQuery};
use qbailey::HalfExp;

fn series(c: &mut Criterion) {
    c.bench_function("inv_q_infinite q^200", |b| b.iter(|| inv_q_infinite(black_box(HalfExp::int(200)))));
    c.bench_function("q_binomial(40,20)", |b| b.iter(|| q_binomial(black_box(40), black_box(20))));
}

fn bailey(c: &mut Criterion) {
    let pair = chain_iterate(&initial_pair(0), 3);
    c.bench_function("verify chain^3 L<=8 q^20", |b| {
        b.iter(|| verify_bailey_pair(black_box(&pair), 8, HalfExp(40)).unwrap())
    });
}

fn configsum(c: &mut Criterion) {
    let pp = PPPair::new(5, 8).unwrap();
    let q = ConfigSumQuery::new(pp, 2, 3, 20, 3).unwrap();
    c.bench_function("bosonic (5,8) L=20", |b| b.iter(|| x_bosonic(black_box(&q))));
    c.bench_function("fermionic (5,8) L=10", |b| b.iter(|| x_fermionic(pp, 2, 3, black_box(10)).unwrap()));
    let s = StringFunctionQuery::new(PPPair::new(2, 5).unwrap(), 1, 1).unwrap();
    c.bench_function("string function (2,5) q^40", |b| b.iter(|| string_function(black_box(&s), HalfExp::int(40))));
}

fn identities(c: &mut Criterion) {
    c.bench_function("RR1 q^50", |b| b.iter(|| rogers_ramanujan(1, HalfExp::int(50)).unwrap()));
    c.bench_function("AG k=4 i=2 derived q^40", |b| {
        b.iter(|| andrews_gordon(4, 2, HalfExp::int(40), AgRoute::Derived).unwrap())
    });
}

criterion_group!(benches, series, bailey, configsum, identities);
criterion_main!(benches);
