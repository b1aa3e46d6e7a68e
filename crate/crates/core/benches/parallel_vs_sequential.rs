use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kscrypt::logic::enumerate_two_valued_states_with;
use kscrypt::protocols::{
    run_bb84_quantum, run_ekert_quantum, run_ks_protocol, ChshAngles, EveStrategy,
    KsProtocolConfig, RunOptions,
};
use kscrypt::randomness::spin32_bits;
use kscrypt::realization::{catalog, search_realization, SearchConfig};
use kscrypt::Execution;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

const ROUNDS: usize = 100_000;

fn protocols(c: &mut Criterion) {
    let mut group = c.benchmark_group("protocols");
    group.sample_size(10);
    for (name, exec) in MODES {
        let opts = RunOptions::new(ROUNDS, 1)
            .with_eve(EveStrategy::InterceptResendRandomBasis)
            .with_execution(exec);
        group.bench_with_input(BenchmarkId::new("bb84_quantum", name), &opts, |b, o| {
            b.iter(|| black_box(run_bb84_quantum(o).unwrap()))
        });
        let ks = KsProtocolConfig::cabello18(opts);
        group.bench_with_input(BenchmarkId::new("ks_cabello18", name), &ks, |b, cfg| {
            b.iter(|| black_box(run_ks_protocol(cfg).unwrap()))
        });
        group.bench_with_input(BenchmarkId::new("ekert_quantum", name), &exec, |b, &e| {
            b.iter(|| black_box(run_ekert_quantum(&ChshAngles::optimal(), ROUNDS, 1, e)))
        });
        group.bench_with_input(BenchmarkId::new("spin32_bits", name), &exec, |b, &e| {
            b.iter(|| black_box(spin32_bits(ROUNDS, 1, e)))
        });
    }
    group.finish();
}

fn logic(c: &mut Criterion) {
    let mut group = c.benchmark_group("logic");
    group.sample_size(10);
    let triangle = catalog("triangle").unwrap().logic;
    let fig3a = catalog("fig3a").unwrap().logic;
    let peres = catalog("peres24").unwrap().logic;
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new("states_fig3a", name), &exec, |b, &e| {
            b.iter(|| black_box(enumerate_two_valued_states_with(&fig3a, e)))
        });
        group.bench_with_input(BenchmarkId::new("states_peres24", name), &exec, |b, &e| {
            b.iter(|| black_box(enumerate_two_valued_states_with(&peres, e)))
        });
        let mut cfg = SearchConfig::new(3, 32, 1);
        cfg.execution = exec;
        group.bench_with_input(BenchmarkId::new("search_triangle", name), &cfg, |b, cfg| {
            b.iter(|| black_box(search_realization(&triangle, cfg).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, protocols, logic);
criterion_main!(benches);
