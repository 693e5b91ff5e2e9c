//! The desk-scale acceptance suite: twelve checks on closed-form families,
//! oracle agreement and strategy guarantees, each with a time allowance.

use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::game::{GameVariant, Player, Strategy};
use crate::generators as gen;
use crate::graph::Graph;
use crate::qgraph::instances::{random_cotree, random_pseudo_spider, spider_suite, Instance};
use crate::qgraph::{cg_qgraph, matched_spider_value, Flavor, Node};
use crate::reductions::{
    build_bipartite, build_planar, build_split, check_structure, lift_strategy, solve_hex, solve_poscnf, CnfInstance,
    HexInstance,
};
use crate::solver::{can_force_cds_within, cg, cg_with, is_a_perfect, SolveOptions};
use crate::strategies::{
    alice_degree_sum, cartesian_bob, clique_chain_bob, cubic_bob, find_suitable_matching, hex_pairing_bob,
    king_mirror_alice, regular5_alice,
};
use crate::verify::{random_playouts, verify_strategy_exhaustive, VerifyOptions};

type Check = std::result::Result<String, String>;

pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub limit: Duration,
    run: fn() -> Check,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:>2} {} ({:.2}s of {}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs(),
            self.detail
        )
    }
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// Turns library errors into check failures.
trait Fail<T> {
    fn ok_or_fail(self, what: &str) -> std::result::Result<T, String>;
}

impl<T> Fail<T> for crate::error::Result<T> {
    fn ok_or_fail(self, what: &str) -> std::result::Result<T, String> {
        self.map_err(|e: Error| format!("{what}: {e}"))
    }
}

fn value(g: &Graph) -> std::result::Result<usize, String> {
    cg(g, &GameVariant::Plain).map(|r| r.value).ok_or_fail("solver")
}

fn verify(g: &Graph, s: &dyn Strategy, side: Player) -> std::result::Result<usize, String> {
    let opts = VerifyOptions { max_states: 400_000_000, threads: 1 };
    verify_strategy_exhaustive(g, &GameVariant::Plain, s, side, opts).map(|r| r.value).ok_or_fail("verification")
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { id: 1, title: "cycles and paths", limit: secs(1), run: cycles_and_paths },
        Criterion { id: 2, title: "disjoint cliques", limit: secs(10), run: disjoint_cliques },
        Criterion { id: 3, title: "degree and order bounds", limit: secs(300), run: bounds },
        Criterion { id: 4, title: "degree-sum graphs are A-perfect", limit: secs(600), run: degree_sum },
        Criterion { id: 5, title: "dense graphs and sharpness", limit: secs(600), run: dense },
        Criterion { id: 6, title: "clique chains", limit: secs(300), run: clique_chains },
        Criterion { id: 7, title: "regular chains", limit: secs(900), run: regular_chains },
        Criterion { id: 8, title: "cubic graphs with suitable matchings", limit: secs(900), run: cubic },
        Criterion { id: 9, title: "decomposition-tree evaluation", limit: secs(1200), run: qgraph },
        Criterion { id: 10, title: "reduction soundness", limit: secs(1200), run: reductions },
        Criterion { id: 11, title: "grids", limit: secs(1200), run: grids },
        Criterion { id: 12, title: "solver self-consistency", limit: secs(600), run: self_consistency },
    ]
}

pub fn run_criterion(c: &Criterion) -> Outcome {
    let start = Instant::now();
    let result = (c.run)();
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if passed && elapsed > c.limit {
        passed = false;
        detail = format!("over time: {detail}");
    }
    Outcome { id: c.id, title: c.title, passed, detail, elapsed, limit: c.limit }
}

/// Runs the criteria whose ids are in `only`, or all of them.
pub fn run_suite(only: Option<&[u8]>) -> Vec<Outcome> {
    criteria().iter().filter(|c| only.is_none_or(|ids| ids.contains(&c.id))).map(run_criterion).collect()
}

fn cycles_and_paths() -> Check {
    for n in 3..=12 {
        let c = value(&gen::cycle(n).unwrap().graph)?;
        let p = value(&gen::path(n).unwrap().graph)?;
        ensure!(c == 2 && p == 2, "n = {n}: cycle {c}, path {p}");
    }
    Ok("value 2 for all 3 <= n <= 12".into())
}

fn disjoint_cliques() -> Check {
    let mut count = 0;
    for d in 2..=4 {
        for m in 1..=3 {
            if (d + 1) * m > 15 {
                continue;
            }
            let v = value(&gen::disjoint_cliques(d + 1, m).unwrap().graph)?;
            ensure!(v == d / 2 + 1, "d = {d}, m = {m}: {v}");
            count += 1;
        }
    }
    Ok(format!("{count} instances match floor(d/2) + 1"))
}

fn random_connected(rng: &mut ChaCha8Rng, n: usize, min_m: usize) -> Graph {
    let total = n * (n - 1) / 2;
    let m = rng.gen_range(min_m.max(n - 1).min(total)..=total);
    gen::random_connected_with(n, m, rng).expect("valid edge count")
}

fn bounds() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..500 {
        let n = rng.gen_range(2..=12);
        let g = random_connected(&mut rng, n, 0);
        let v = value(&g)?;
        let (lo, hi) = (g.max_degree() / 2 + 1, n.div_ceil(2));
        ensure!(lo <= v && v <= hi, "sample {i}: {lo} <= {v} <= {hi} fails");
    }
    Ok("500 samples, no violations".into())
}

fn degree_sum() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut graphs = Vec::new();
    while graphs.len() < 200 {
        let n = rng.gen_range(3..=11);
        let g = random_connected(&mut rng, n, n * (n - 1) / 4);
        if g.max_degree() + g.min_degree() >= n {
            graphs.push(g);
        }
    }
    for (i, g) in graphs.iter().enumerate() {
        ensure!(is_a_perfect(g).ok_or_fail("solver")?, "sample {i} is not A-perfect");
    }
    for (i, g) in graphs.iter().take(20).enumerate() {
        let s = alice_degree_sum(g).ok_or_fail("strategy")?;
        let v = verify(g, &s, Player::Alice)?;
        ensure!(v == g.n().div_ceil(2), "sample {i}: strategy reaches {v} of {}", g.n().div_ceil(2));
    }
    Ok("200 A-perfect; strategy perfect on 20".into())
}

fn dense() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..200 {
        let n = rng.gen_range(3..=10);
        let threshold = (n - 2) * (n - 3) / 2 + 2;
        let g = random_connected(&mut rng, n, threshold + 1);
        ensure!(g.edge_count() > threshold, "sampler produced too few edges");
        ensure!(can_force_cds_within(&g, 4).ok_or_fail("cds search")?, "sample {i} (n = {n}) fails");
    }
    for order in [3, 5] {
        let g = gen::clique_pendant_path(order).unwrap().graph;
        ensure!(!is_a_perfect(&g).ok_or_fail("solver")?, "clique_pendant_path({order}) is A-perfect");
    }
    Ok("200 dense samples force a CDS in 4 rounds; both sharpness examples fail".into())
}

fn clique_chains() -> Check {
    for (d, n) in [(3, 2), (3, 3), (4, 2)] {
        let g = gen::clique_chain(d, n).unwrap().graph;
        let bob = clique_chain_bob(&g).ok_or_fail("strategy")?;
        let v = verify(&g, &bob, Player::Bob)?;
        ensure!(v <= (d + 3).div_ceil(2), "(d, N) = ({d}, {n}): Alice reaches {v}");
    }
    let v = value(&gen::clique_chain(3, 2).unwrap().graph)?;
    ensure!(v <= 3, "cg(clique_chain(3, 2)) = {v}");
    Ok(format!("Bob caps all three; cg(clique_chain(3, 2)) = {v}"))
}

fn regular_chains() -> Check {
    for n in [3, 4] {
        let g = gen::regular4_chain(n).unwrap().graph;
        ensure!(is_a_perfect(&g).ok_or_fail("solver")?, "regular4_chain({n}) is not A-perfect");
    }
    let g = gen::regular5_chain(5, 3).unwrap().graph;
    let alice = regular5_alice(&g).ok_or_fail("strategy")?;
    let v = verify(&g, &alice, Player::Alice)?;
    ensure!(v == 9, "regular5_chain(5, 3): strategy reaches {v}");
    Ok("regular4_chain with N = 3, 4 A-perfect; regular5_chain(5, 3) strategy reaches 9".into())
}

fn cubic() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut tested = 0;
    for n in [8, 10, 12, 14] {
        for _ in 0..6 {
            let g = gen::random_cubic_with(n, &mut rng).ok_or_fail("sampler")?;
            if find_suitable_matching(&g).ok_or_fail("matching search")?.is_none() {
                continue;
            }
            let bob = cubic_bob(&g).ok_or_fail("strategy")?;
            let v = verify(&g, &bob, Player::Bob)?;
            ensure!(v < n / 2, "order {n}: Alice keeps a connected red graph");
            tested += 1;
        }
    }
    ensure!(tested > 0, "no sampled graph admitted a suitable matching");
    ensure!(is_a_perfect(&gen::complete(4).unwrap().graph).ok_or_fail("solver")?, "K4 is not A-perfect");
    Ok(format!("{tested} graphs with a suitable matching, all disconnected; K4 A-perfect"))
}

fn tree_agrees(inst: &Instance) -> Check {
    let t = cg_qgraph(&inst.graph, &inst.tree).ok_or_fail("tree evaluation")?.value;
    let v = value(&inst.graph)?;
    ensure!(t == v, "{}: tree {t}, solver {v}", inst.label);
    Ok(String::new())
}

fn qgraph() -> Check {
    let spiders = spider_suite(&[2, 3, 4], 4).ok_or_fail("spiders")?;
    for inst in &spiders {
        tree_agrees(inst)?;
        if let Node::Spider { flavor: Flavor::Matched, k, .. } = &inst.tree.root {
            let f = matched_spider_value(inst.graph.n(), k.len()).ok_or_fail("formula")?;
            ensure!(f == value(&inst.graph)?, "{}: formula {f}", inst.label);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..50 {
        let leaves = rng.gen_range(1..=12);
        tree_agrees(&random_cotree(leaves, &mut rng).ok_or_fail("cotree")?)?;
    }
    for i in 0..20 {
        let head = rng.gen_range(2..=4);
        let k = rng.gen_range(1..=head);
        let r = if i % 2 == 0 { rng.gen_range(1..=8) } else { 9 };
        tree_agrees(&random_pseudo_spider(head - k, k, r, 4, &mut rng).ok_or_fail("pseudo-spider")?)?;
    }
    Ok(format!("{} spiders, 50 cotrees, 20 pseudo-spiders agree", spiders.len()))
}

fn small_cnfs(n: usize) -> Vec<CnfInstance> {
    let supports: Vec<Vec<usize>> = (1u32..1 << n).map(|m| (0..n).filter(|x| m >> x & 1 == 1).collect()).collect();
    let mut out = vec![CnfInstance::new(n, vec![]).expect("valid")];
    for (i, a) in supports.iter().enumerate() {
        out.push(CnfInstance::new(n, vec![a.clone()]).expect("valid"));
        for b in &supports[i..] {
            out.push(CnfInstance::new(n, vec![a.clone(), b.clone()]).expect("valid"));
        }
    }
    out
}

fn reductions() -> Check {
    let mut count = 0;
    for n in 1..=4 {
        for cnf in small_cnfs(n) {
            let alice = solve_poscnf(&cnf).ok_or_fail("CNF solver")? == Player::Alice;
            for out in [build_bipartite(&cnf), build_split(&cnf)] {
                let out = out.ok_or_fail("build")?;
                check_structure(&out).ok_or_fail("structure")?;
                let v = value(&out.g)?;
                ensure!(alice == (v >= out.k), "{} on {cnf}: cg = {v}, k = {}", out.kind, out.k);
            }
            count += 1;
        }
    }
    let path = |n: usize| Graph::from_edges(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>()).expect("path");
    let mut smallest = None;
    for (g, s, t) in
        [(path(3), 0, 2), (path(4), 0, 3), (Graph::from_edges(4, &[(0, 1), (1, 3), (0, 2), (2, 3)]).unwrap(), 0, 3)]
    {
        let hex = HexInstance::new(g, s, t).ok_or_fail("hex")?;
        let out = build_planar(&hex).ok_or_fail("planar build")?;
        let n = hex.h.n() + hex.h.n() % 2;
        ensure!(out.k == n + 5 && out.g.n() == 7 * n + 30, "planar arithmetic");
        if smallest.is_none() && solve_hex(&hex).ok_or_fail("hex solver")? == Player::Bob {
            smallest = Some((n, out));
        }
    }
    let (n, out) = smallest.ok_or("no Bob-winning hex instance")?;
    let bob = lift_strategy(&out, Player::Bob).ok_or_fail("lift")?;
    let plays = random_playouts(&out.g, &GameVariant::Plain, &bob, Player::Bob, 100_000, 10).ok_or_fail("playouts")?;
    ensure!(plays.max <= n + 3, "lifted Bob allowed {} > {}", plays.max, n + 3);
    Ok(format!("{count} CNF instances sound; lifted planar Bob holds Alice to {} <= {}", plays.max, n + 3))
}

fn grids() -> Check {
    for m in 1..=6 {
        let g = gen::king_grid_2rows(m).unwrap().graph;
        let v = value(&g)?;
        ensure!(v == m, "cg(P2 x P{m}) = {v}");
        let alice = king_mirror_alice(&g).ok_or_fail("strategy")?;
        let s = verify(&g, &alice, Player::Alice)?;
        ensure!(s == m, "king mirror reaches {s} on m = {m}");
    }
    for n in 1..=3 {
        for m in 1..=4 {
            let v = value(&gen::cartesian_grid(n, m).unwrap().graph)?;
            ensure!(v <= 2 * n, "cg(P{n} □ P{m}) = {v}");
        }
    }
    let g = gen::cartesian_grid(3, 5).unwrap().graph;
    let v = verify(&g, &cartesian_bob(&g, Some(3), Some(5)).ok_or_fail("strategy")?, Player::Bob)?;
    ensure!(v <= 6, "cartesian_bob on 3 x 5 allows {v}");
    let patch = gen::hex_patch(2, None).ok_or_fail("hex patch")?.graph;
    let h = verify(&patch, &hex_pairing_bob(&patch, None).ok_or_fail("strategy")?, Player::Bob)?;
    ensure!(h <= 6, "hex pairing allows {h}");
    let mut connected = Vec::new();
    for m in 4..=6 {
        let g = gen::king_grid_2rows(m).unwrap().graph;
        connected.push(cg_with(&g, &GameVariant::Connected, &SolveOptions::default()).ok_or_fail("solver")?.value);
    }
    let peak = (0..connected.len()).max_by_key(|&i| (connected[i], usize::MAX - i)).unwrap_or(0);
    ensure!(connected[peak..].windows(2).all(|w| w[1] <= w[0]), "connected values {connected:?} rise after the peak");
    ensure!(connected.iter().all(|&v| v <= 6), "connected values {connected:?} exceed 6");
    Ok(format!("king and cartesian bounds hold; hex patch {h}; connected king values {connected:?}"))
}

fn self_consistency() -> Check {
    let mut suite: Vec<Graph> = Vec::new();
    for n in 1..=8 {
        suite.push(gen::path(n).unwrap().graph);
        suite.push(gen::complete(n).unwrap().graph);
        if n >= 3 {
            suite.push(gen::cycle(n).unwrap().graph);
        }
    }
    suite.push(gen::disjoint_cliques(3, 2).unwrap().graph);
    suite.push(gen::disjoint_cliques(4, 2).unwrap().graph);
    suite.push(gen::clique_pendant_path(5).unwrap().graph);
    suite.push(gen::king_grid_2rows(4).unwrap().graph);
    suite.push(gen::cartesian_grid(2, 4).unwrap().graph);
    suite.push(gen::prism(4).unwrap().graph);
    suite.push(gen::complete_bipartite(3, 4).unwrap().graph);
    suite
        .extend(spider_suite(&[2, 3, 4], 4).ok_or_fail("spiders")?.into_iter().map(|i| i.graph).filter(|g| g.n() <= 8));
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let n = rng.gen_range(2..=8);
        suite.push(random_connected(&mut rng, n, 0));
    }
    let plain = SolveOptions { pruning: false, ..SolveOptions::default() };
    for (i, g) in suite.iter().enumerate() {
        for variant in [GameVariant::Plain, GameVariant::Connected] {
            let a = cg_with(g, &variant, &SolveOptions::default()).ok_or_fail("solver")?.value;
            let b = cg_with(g, &variant, &plain).ok_or_fail("unpruned solver")?.value;
            ensure!(a == b, "graph {i} ({variant:?}): pruned {a}, unpruned {b}");
        }
    }
    let threaded = SolveOptions { threads: 4, ..SolveOptions::default() };
    for i in 0..50 {
        let n = rng.gen_range(6..=12);
        let g = random_connected(&mut rng, n, 0);
        let a = value(&g)?;
        let b = cg_with(&g, &GameVariant::Plain, &threaded).ok_or_fail("threaded solver")?.value;
        ensure!(a == b, "instance {i}: one thread {a}, four threads {b}");
    }
    Ok(format!("{} graphs agree with and without pruning; 50 agree across thread counts", suite.len()))
}
