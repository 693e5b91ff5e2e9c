use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use mbgame::generators as gen;
use mbgame::qgraph::cg_qgraph;
use mbgame::qgraph::instances::{random_cotree, random_pseudo_spider};
use mbgame::solver::{cg, cg_with, SolveOptions};
use mbgame::strategies::cubic_bob;
use mbgame::verify::{verify_strategy_exhaustive, VerifyOptions};
use mbgame::{GameVariant, Player};

fn solver(c: &mut Criterion) {
    let mut group = c.benchmark_group("cg");
    for n in [10, 12, 14] {
        let g = gen::cycle(n).unwrap().graph;
        group.bench_with_input(BenchmarkId::new("cycle", n), &g, |b, g| {
            b.iter(|| cg(black_box(g), &GameVariant::Plain).unwrap().value)
        });
    }
    for n in [10, 12, 14] {
        let g = gen::random_connected(n, 2 * n, 7).unwrap().graph;
        group.bench_with_input(BenchmarkId::new("random_connected", n), &g, |b, g| {
            b.iter(|| cg(black_box(g), &GameVariant::Plain).unwrap().value)
        });
    }
    let g = gen::random_connected(10, 20, 7).unwrap().graph;
    let unpruned = SolveOptions { pruning: false, ..SolveOptions::default() };
    group.bench_function("random_connected/10/unpruned", |b| {
        b.iter(|| cg_with(black_box(&g), &GameVariant::Plain, &unpruned).unwrap().value)
    });
    group.bench_function("random_connected/10/connected_variant", |b| {
        b.iter(|| cg(black_box(&g), &GameVariant::Connected).unwrap().value)
    });
    group.finish();
}

fn qgraph(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let cotree = random_cotree(12, &mut rng).unwrap();
    let spider = random_pseudo_spider(2, 2, 9, 4, &mut rng).unwrap();
    let mut group = c.benchmark_group("qgraph");
    for inst in [&cotree, &spider] {
        group.bench_function(&inst.label, |b| b.iter(|| cg_qgraph(black_box(&inst.graph), &inst.tree).unwrap().value));
    }
    group.finish();
}

fn verification(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let (g, bob) = std::iter::repeat_with(|| gen::random_cubic_with(12, &mut rng).unwrap())
        .find_map(|g| cubic_bob(&g).ok().map(|bob| (g, bob)))
        .unwrap();
    c.bench_function("verify/cubic_bob/12", |b| {
        b.iter(|| {
            verify_strategy_exhaustive(black_box(&g), &GameVariant::Plain, &bob, Player::Bob, VerifyOptions::default())
                .unwrap()
                .value
        })
    });
}

criterion_group!(benches, solver, qgraph, verification);
criterion_main!(benches);
