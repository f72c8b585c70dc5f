use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use openpath_bench::chain;
use openpath_core::{solve_chain, solve_monolithic, MinPlus};

fn chain_vs_monolithic(c: &mut Criterion) {
    let mut group = c.benchmark_group("chain");
    group.sample_size(20);
    for blocks in [2, 4, 8] {
        let d = chain(&MinPlus, blocks, 32, 0);
        group.bench_with_input(BenchmarkId::new("compositional", blocks), &d, |b, d| {
            b.iter(|| solve_chain(d).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("monolithic", blocks), &d, |b, d| {
            b.iter(|| solve_monolithic(d).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, chain_vs_monolithic);
criterion_main!(benches);
