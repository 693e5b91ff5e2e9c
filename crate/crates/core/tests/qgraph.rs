use mbgame::qgraph::instances::{random_cotree, random_pseudo_spider, spider_suite, Instance};
use mbgame::qgraph::{alice_strategy_qgraph, cg_qgraph, matched_spider_value, Flavor, Node};
use mbgame::solver::cg;
use mbgame::verify::{verify_strategy_exhaustive, VerifyOptions};
use mbgame::{GameVariant, Player};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn exact(inst: &Instance) -> usize {
    cg(&inst.graph, &GameVariant::Plain).unwrap().value
}

fn pseudo_spiders() -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    (0..20)
        .map(|i| {
            let head = rng.gen_range(2..=4);
            let k = rng.gen_range(1..=head);
            let r = if i % 2 == 0 { rng.gen_range(1..=8) } else { 9 };
            let n_extra = if head + r > 13 { 13 - head } else { r };
            random_pseudo_spider(head - k, k, n_extra, 4, &mut rng).unwrap()
        })
        .collect()
}

#[test]
fn spiders_match_the_solver() {
    for inst in spider_suite(&[2, 3, 4], 4).unwrap() {
        assert_eq!(cg_qgraph(&inst.graph, &inst.tree).unwrap().value, exact(&inst), "{}", inst.label);
    }
}

#[test]
fn matched_formula_matches_brute_force() {
    for inst in spider_suite(&[2, 3, 4], 4).unwrap() {
        if let Node::Spider { flavor: Flavor::Matched, k, .. } = &inst.tree.root {
            assert_eq!(matched_spider_value(inst.graph.n(), k.len()).unwrap(), exact(&inst), "{}", inst.label);
        }
    }
}

#[test]
fn cotrees_match_the_solver() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..50 {
        let leaves = rng.gen_range(1..=12);
        let inst = random_cotree(leaves, &mut rng).unwrap();
        assert_eq!(cg_qgraph(&inst.graph, &inst.tree).unwrap().value, exact(&inst), "{}", inst.label);
    }
}

#[test]
fn pseudo_spiders_match_the_solver() {
    for inst in pseudo_spiders() {
        assert_eq!(cg_qgraph(&inst.graph, &inst.tree).unwrap().value, exact(&inst), "{}", inst.label);
    }
}

#[test]
fn composed_strategy_reaches_the_value() {
    let mut insts = spider_suite(&[2, 3], 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    insts.extend((0..10).map(|_| random_cotree(rng.gen_range(2..=9), &mut rng).unwrap()));
    insts.extend(pseudo_spiders().into_iter().filter(|i| i.graph.n() <= 11));
    for inst in insts {
        let v = cg_qgraph(&inst.graph, &inst.tree).unwrap().value;
        let s = alice_strategy_qgraph(&inst.graph, &inst.tree).unwrap();
        let got =
            verify_strategy_exhaustive(&inst.graph, &GameVariant::Plain, &s, Player::Alice, VerifyOptions::default())
                .unwrap()
                .value;
        assert_eq!(got, v, "{}", inst.label);
    }
}

#[test]
fn cost_grows_linearly_with_the_tree() {
    // A union chain of P3 joins: each block is a constant-size gadget.
    let mut per_node = Vec::new();
    for blocks in [4usize, 8, 16] {
        let n = 3 * blocks;
        let mut edges = Vec::new();
        let mut node: Option<Node> = None;
        for b in 0..blocks {
            let (x, y, z) = (3 * b, 3 * b + 1, 3 * b + 2);
            edges.extend([(x, y), (x, z)]);
            let t = Node::join(Node::leaf([x]), Node::union(Node::leaf([y]), Node::leaf([z])));
            node = Some(match node {
                None => t,
                Some(prev) => Node::union(prev, t),
            });
        }
        let g = mbgame::Graph::from_edges(n, &edges).unwrap();
        let tree = mbgame::qgraph::DecompositionTree { q: 4, root: node.unwrap() };
        let r = cg_qgraph(&g, &tree).unwrap();
        assert_eq!(r.value, 2);
        per_node.push(r.ops as f64 / tree.root.size() as f64);
    }
    let (lo, hi) = per_node.iter().fold((f64::MAX, 0f64), |(a, b), &x| (a.min(x), b.max(x)));
    assert!(hi <= 1.5 * lo, "ops per node drift: {per_node:?}");
}
