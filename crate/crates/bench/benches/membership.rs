use criterion::{black_box, criterion_group, criterion_main, Criterion};

use cfwp::oracle::cross_check;
use cfwp::pda::CfgRep;
use cfwp_bench::{bicyclic, br_c2, encoded_pairs, free_group_rank2};

fn chart_membership(c: &mut Criterion) {
    let mut g = c.benchmark_group("chart");
    for (name, w, max) in [("bicyclic", bicyclic(), 3), ("free_group", free_group_rank2(), 2), ("br_c2", br_c2(), 2)] {
        let p = w.require_pda().unwrap();
        p.prepare();
        let words = encoded_pairs(&w, max);
        g.bench_function(name, |b| {
            b.iter(|| words.iter().filter(|x| p.accepts(black_box(x)).unwrap()).count())
        });
    }
    g.finish();
}

fn cyk_membership(c: &mut Criterion) {
    let w = bicyclic();
    let g = CfgRep::new(w.require_pda().unwrap().to_cfg());
    let enc: Vec<Vec<usize>> = encoded_pairs(&w, 3).iter().map(|x| g.grammar.terminals().encode(x).unwrap()).collect();
    let cnf = g.cnf();
    c.bench_function("cyk/bicyclic", |b| b.iter(|| enc.iter().filter(|x| cnf.member(black_box(x))).count()));
}

fn crosscheck(c: &mut Criterion) {
    let w = bicyclic();
    c.bench_function("crosscheck/bicyclic_4", |b| b.iter(|| cross_check(&w, 4, 4, 1).unwrap().mismatch_count));
}

criterion_group!(benches, chart_membership, cyk_membership, crosscheck);
criterion_main!(benches);
