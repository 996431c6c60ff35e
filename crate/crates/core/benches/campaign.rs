use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use riordan::campaign::{self, CampaignConfig, Suite};
use riordan::{random, MonomialMatrix, Ring};

fn campaigns(c: &mut Criterion) {
    let mut group = c.benchmark_group("homomorphism_campaign");
    group.sample_size(10);
    for (name, threads) in [("sequential", Some(1)), ("parallel", None)] {
        let mut cfg = CampaignConfig::new(Suite::Homomorphism, vec![2, 3], vec![4], Ring::Integer, 40, 1);
        cfg.threads = threads;
        group.bench_function(name, |b| b.iter(|| black_box(campaign::run(&cfg).unwrap())));
    }
    group.finish();
}

fn matrices(c: &mut Criterion) {
    let mut group = c.benchmark_group("riordan_matrix_product");
    group.sample_size(10);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (d, k) in [(3, 6), (4, 6)] {
        let a = MonomialMatrix::riordan(&random::invertible(&mut rng, d, k, Ring::Rational));
        let b = MonomialMatrix::riordan(&random::invertible(&mut rng, d, k, Ring::Rational));
        group.bench_with_input(BenchmarkId::new("mul", format!("d{d}_k{k}_n{}", a.size())), &(a, b), |bench, (a, b)| {
            bench.iter(|| black_box(a.mul(b).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, campaigns, matrices);
criterion_main!(benches);
