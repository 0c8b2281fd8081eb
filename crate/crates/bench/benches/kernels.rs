use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use symbias::momentlp::{optimize, Sense};
use symbias::symdist::profile_to_pmf;
use symbias::KrawtchoukTable;
use symbias_bench::{central_threshold, extremal_profile};

fn build_table(c: &mut Criterion) {
    let mut g = c.benchmark_group("build_table");
    for n in [32usize, 64, 128] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| KrawtchoukTable::new(black_box(n)).unwrap())
        });
    }
    g.finish();
}

fn profile_pmf(c: &mut Criterion) {
    let mut g = c.benchmark_group("profile_to_pmf");
    for n in [32usize, 64] {
        let profile = extremal_profile(n, 2);
        g.bench_with_input(BenchmarkId::from_parameter(n), &profile, |b, p| {
            b.iter(|| profile_to_pmf(black_box(p)).unwrap())
        });
    }
    g.finish();
}

fn lp_optimize(c: &mut Criterion) {
    let mut g = c.benchmark_group("lp_optimize");
    g.sample_size(20);
    for (n, k) in [(16usize, 2usize), (32, 2), (32, 4)] {
        let test = central_threshold(n);
        g.bench_with_input(BenchmarkId::new(format!("n{n}"), k), &k, |b, &k| {
            b.iter(|| optimize(black_box(&test), k, Sense::Max).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, build_table, profile_pmf, lp_optimize);
criterion_main!(benches);
