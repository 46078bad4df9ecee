use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use powsum_core::baker::{case_setup, Case, LaurentConstants};
use powsum_core::directed::DEFAULT_DIGITS;
use powsum_core::exact::{perfect_power_witnesses, power_sum_t_with, Evaluation};
use powsum_core::sieve::{run_sieve, small_prime_exponent_cap, t_mod_table, SieveConfig};
use powsum_core::valuation::{verify_valuation_predictors, vp};

fn power_sums(c: &mut Criterion) {
    let mut g = c.benchmark_group("power_sum_t");
    for k in [40u32, 400] {
        for (name, how) in [("direct", Evaluation::Direct), ("bernoulli", Evaluation::Bernoulli)] {
            g.bench_with_input(BenchmarkId::new(name, k), &k, |b, &k| {
                b.iter(|| power_sum_t_with(black_box(k), black_box(11), how).unwrap())
            });
        }
    }
    g.finish();
    let t = power_sum_t_with(83, 13, Evaluation::Direct).unwrap();
    c.bench_function("perfect_power_witnesses T_83(13)", |b| {
        b.iter(|| perfect_power_witnesses(black_box(&t), 2, 400).unwrap())
    });
}

fn valuations(c: &mut Criterion) {
    let t = power_sum_t_with(400, 9, Evaluation::Direct).unwrap();
    c.bench_function("vp(T_400(9), 3)", |b| b.iter(|| vp(black_box(&t), 3).unwrap()));
    let mut g = c.benchmark_group("valuation_oracle");
    g.sample_size(10);
    g.bench_function("x <= 200, k <= 13", |b| b.iter(|| verify_valuation_predictors(200, 13)));
    g.finish();
}

fn laurent(c: &mut Criterion) {
    let mut g = c.benchmark_group("laurent_constants");
    g.sample_size(20);
    for case in Case::ALL {
        let setup = case_setup(11, case, DEFAULT_DIGITS).unwrap();
        g.bench_function(format!("case {case}, x = 11"), |b| {
            b.iter(|| LaurentConstants::at(black_box(&setup), 190_000).unwrap())
        });
    }
    g.finish();
}

fn sieve(c: &mut Criterion) {
    c.bench_function("t_mod_table x=11 p=100003", |b| b.iter(|| t_mod_table(11, black_box(100_003))));
    let config = SieveConfig::default();
    let mut g = c.benchmark_group("run_sieve");
    for (x, n) in [(2u64, 3u64), (5, 3), (11, 31)] {
        g.bench_function(format!("x={x} n={n}"), |b| b.iter(|| run_sieve(x, n, &config).unwrap()));
    }
    g.finish();
    c.bench_function("small_prime_exponent_cap x=11 k=5000", |b| {
        b.iter(|| small_prime_exponent_cap(11, black_box(5000), 100_000))
    });
}

criterion_group!(benches, power_sums, valuations, laurent, sieve);
criterion_main!(benches);
