//! Alice strategies composed along a decomposition tree.

use std::sync::Mutex;

use rustc_hash::FxHashMap;

use super::eval::{pseudo_case, Evaluator, PseudoCase};
use super::tree::{validate_tree, DecompositionTree, Flavor, Node};
use crate::error::{Error, Result};
use crate::game::{GameVariant, Move, Player, Position, PrivateState, Strategy};
use crate::graph::{induced, Graph, VertexSet};
use crate::solver::{PositionSolver, SolveOptions};

/// The part of the tree Alice commits to, and how she plays inside it.
enum Plan {
    Solver(PositionSolver),
    Join { small: VertexSet, large: VertexSet },
    Antimatched { k: VertexSet },
    Matched { k: VertexSet, f: Vec<(usize, usize)> },
    Pool(PoolGame),
}

pub struct QgraphAlice {
    area: VertexSet,
    plan: Plan,
}

/// Builds an Alice strategy achieving the tree's value. Unions are resolved
/// by committing to the better side; moves outside the chosen part are
/// treated as Bob passing.
pub fn alice_strategy_qgraph(g: &Graph, t: &DecompositionTree) -> Result<QgraphAlice> {
    alice_strategy_qgraph_with(g, t, &SolveOptions::default())
}

pub fn alice_strategy_qgraph_with(g: &Graph, t: &DecompositionTree, opts: &SolveOptions) -> Result<QgraphAlice> {
    validate_tree(g, t).map_err(|d| Error::domain(format!("invalid tree at {d}")))?;
    let mut e = Evaluator { g, q: t.q, opts, ops: 0 };
    let (area, plan) = build(&mut e, &t.root)?;
    Ok(QgraphAlice { area, plan })
}

fn solver(e: &Evaluator, within: VertexSet) -> Result<(VertexSet, Plan)> {
    Ok((within, Plan::Solver(PositionSolver::for_subgraph(e.g, within, &GameVariant::Plain, e.opts)?)))
}

fn build(e: &mut Evaluator, node: &Node) -> Result<(VertexSet, Plan)> {
    match node {
        Node::Leaf(s) => solver(e, *s),
        Node::Union(a, b) => {
            let (va, _) = e.eval(a)?;
            let (vb, _) = e.eval(b)?;
            build(e, if va >= vb { a } else { b })
        }
        Node::Join(a, b) => {
            let (sa, sb) = (e.span(a), e.span(b));
            let (small, large) = if sa.len() <= sb.len() { (sa, sb) } else { (sb, sa) };
            Ok((sa | sb, Plan::Join { small, large }))
        }
        Node::Spider { flavor, s, k, f, .. } => {
            let all = e.span(node);
            let ks: VertexSet = k.iter().copied().collect();
            let plan = match flavor {
                Flavor::Antimatched if k.len() >= 3 => Plan::Antimatched { k: ks },
                Flavor::Matched => Plan::Matched { k: ks, f: f.clone() },
                Flavor::Antimatched => {
                    // With |K| = 2 each s sees exactly the other K vertex.
                    let swap = |b: usize| (ks - VertexSet::singleton(b)).min().expect("|K| = 2");
                    Plan::Matched { k: ks, f: f.iter().map(|&(a, b)| (a, swap(b))).collect() }
                }
            };
            debug_assert_eq!(s.len(), k.len());
            Ok((all, plan))
        }
        Node::PseudoSpider { s, k, r } => {
            let rs = r.as_ref().map_or(VertexSet::EMPTY, |r| e.span(r));
            let all = *s | *k | rs;
            if rs.is_empty() {
                return solver(e, all);
            }
            if k.is_empty() {
                let vs = e.exact(*s)?;
                let r = r.as_ref().expect("nonempty R has a subtree");
                let (vr, _) = e.eval(r)?;
                return if vs >= vr { solver(e, *s) } else { build(e, r) };
            }
            let main = e.g.component_within(all, VertexSet::min(*k).expect("K nonempty"));
            let stray = all - main;
            if !stray.is_empty() {
                let reduced = Node::PseudoSpider { s: *s & main, k: *k, r: r.clone() };
                let v_main = e.eval(&reduced)?.0;
                return if e.exact(stray)? > v_main { solver(e, stray) } else { build(e, &reduced) };
            }
            match pseudo_case(e.q, rs.len()) {
                PseudoCase::Exact => solver(e, main),
                PseudoCase::Combine => Ok((main, Plan::Pool(PoolGame::new(e.g, *s & main, *k, rs)?))),
            }
        }
    }
}

impl Strategy for QgraphAlice {
    fn name(&self) -> String {
        "qgraph_alice".into()
    }

    fn choose(&self, pos: &Position, _state: &PrivateState) -> Move {
        let legal = pos.legal_vertices() & self.area;
        let Some(lowest) = legal.min() else {
            return pos.fallback();
        };
        let red = pos.config.red & self.area;
        let pick = |set: VertexSet| (legal & set).min();
        let chosen = match &self.plan {
            Plan::Solver(s) => match s.best_move(pos.config, Player::Alice) {
                Ok(Some(Move::Color(v))) if legal.contains(v) => Some(v),
                _ => None,
            },
            Plan::Join { small, large } => {
                if !red.intersects(*small) {
                    pick(*small)
                } else if !red.intersects(*large) {
                    pick(*large)
                } else {
                    None
                }
            }
            Plan::Antimatched { k } => {
                if (red & *k).len() < 2 {
                    pick(*k)
                } else {
                    None
                }
            }
            Plan::Matched { k, f } => pick(*k).or_else(|| {
                let stranded: VertexSet =
                    f.iter().filter(|&&(_, b)| pos.config.blue.contains(b)).map(|&(a, _)| a).collect();
                (legal - stranded).min()
            }),
            Plan::Pool(p) => p.best(pos, legal),
        };
        Move::Color(chosen.unwrap_or(lowest))
    }
}

type PoolKey = (u64, u64, u8, u8, bool);

/// A large pseudo-spider seen as its head plus an interchangeable pool of
/// `R` vertices. The pool score counts red `R` vertices as joined to every
/// component meeting a red `K` vertex, which is exact once red meets both.
pub(crate) struct PoolGame {
    head: Vec<usize>,
    adj: Vec<u64>,
    k: u64,
    r: VertexSet,
    memo: Mutex<FxHashMap<PoolKey, u8>>,
}

impl PoolGame {
    fn new(g: &Graph, s: VertexSet, k: VertexSet, r: VertexSet) -> Result<Self> {
        let ind = induced(g, s | k)?;
        if ind.graph.n() > 20 || r.len() > 255 {
            return Err(Error::Capacity { n: ind.graph.n(), limit: 20 });
        }
        Ok(PoolGame {
            head: ind.to_parent.clone(),
            adj: (0..ind.graph.n()).map(|v| ind.graph.neighbors(v).as_u64()).collect(),
            k: ind.project(k).as_u64(),
            r,
            memo: Mutex::new(FxHashMap::default()),
        })
    }

    fn component(&self, within: u64, start: u64) -> u64 {
        let mut seen = start;
        loop {
            let mut next = seen;
            let mut rest = seen;
            while rest != 0 {
                next |= self.adj[rest.trailing_zeros() as usize];
                rest &= rest - 1;
            }
            next &= within;
            if next == seen {
                return seen;
            }
            seen = next;
        }
    }

    fn score(&self, red: u64, red_r: u8) -> u8 {
        let touching = if red & self.k != 0 { self.component(red, red & self.k) } else { 0 };
        if touching != 0 && red_r > 0 {
            return touching.count_ones() as u8 + red_r;
        }
        let mut best = 0;
        let mut rest = red;
        while rest != 0 {
            let c = self.component(red, rest & rest.wrapping_neg());
            rest &= !c;
            best = best.max(c.count_ones());
        }
        (best as u8).max((red_r > 0) as u8)
    }

    fn value(&self, memo: &mut FxHashMap<PoolKey, u8>, key: PoolKey) -> u8 {
        let (red, blue, rr, br, alice) = key;
        let all = (1u64 << self.head.len()) - 1;
        let free = all & !(red | blue);
        let pool = self.r.len() as u8 - rr - br;
        if free == 0 && pool == 0 {
            return self.score(red, rr);
        }
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let mut best: Option<u8> = None;
        let mut consider = |v: u8| {
            best = Some(match best {
                None => v,
                Some(b) if alice => b.max(v),
                Some(b) => b.min(v),
            })
        };
        let mut rest = free;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            rest &= rest - 1;
            let child = if alice { (red | bit, blue, rr, br, false) } else { (red, blue | bit, rr, br, true) };
            consider(self.value(memo, child));
        }
        if pool > 0 {
            let child = if alice { (red, blue, rr + 1, br, false) } else { (red, blue, rr, br + 1, true) };
            consider(self.value(memo, child));
        }
        let v = best.expect("some move exists");
        memo.insert(key, v);
        v
    }

    fn best(&self, pos: &Position, legal: VertexSet) -> Option<usize> {
        let local = |s: VertexSet| {
            self.head.iter().enumerate().filter(|(_, &p)| s.contains(p)).fold(0u64, |acc, (i, _)| acc | 1 << i)
        };
        let (red, blue) = (local(pos.config.red), local(pos.config.blue));
        let rr = (pos.config.red & self.r).len() as u8;
        let br = (pos.config.blue & self.r).len() as u8;
        let mut memo = self.memo.lock().expect("memo poisoned");
        let mut best: Option<(u8, Option<usize>)> = None;
        for (i, &v) in self.head.iter().enumerate() {
            if legal.contains(v) {
                let val = self.value(&mut memo, (red | 1 << i, blue, rr, br, false));
                if best.is_none_or(|(b, _)| val > b) {
                    best = Some((val, Some(v)));
                }
            }
        }
        if let Some(v) = (legal & self.r).min() {
            let val = self.value(&mut memo, (red, blue, rr + 1, br, false));
            if best.is_none_or(|(b, _)| val > b) {
                best = Some((val, Some(v)));
            }
        }
        best.and_then(|(_, v)| v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qgraph::tree::parse_tree;
    use crate::verify::{verify_strategy_exhaustive, VerifyOptions};

    fn guaranteed(g: &Graph, text: &str) -> usize {
        let t = parse_tree(text).unwrap();
        let s = alice_strategy_qgraph(g, &t).unwrap();
        verify_strategy_exhaustive(g, &GameVariant::Plain, &s, Player::Alice, VerifyOptions::default()).unwrap().value
    }

    #[test]
    fn join_is_perfect() {
        let g = crate::generators::complete_bipartite(2, 3).unwrap().graph;
        let t = "q 4\n(join (union (leaf 0) (leaf 1)) (union (leaf 2) (union (leaf 3) (leaf 4))))";
        assert_eq!(guaranteed(&g, t), 3);
    }

    #[test]
    fn union_follows_better_side() {
        let k4 = crate::generators::complete(4).unwrap().graph;
        let k2 = crate::generators::complete(2).unwrap().graph;
        let g = crate::generators::disjoint_union(&[&k2, &k4]).unwrap();
        assert_eq!(guaranteed(&g, "q 4\n(union (leaf 0 1) (leaf 2 3 4 5))"), 2);
    }

    #[test]
    fn matched_spider_with_r() {
        use crate::generators::{spider, RKind, SpiderFlavor};
        let f = spider(SpiderFlavor::Matched, 3, 1, RKind::Independent).unwrap();
        let t = "q 4\n(spider matched (s 0 1 2) (k 3 4 5) (f 0:3 1:4 2:5) (leaf 6))";
        assert_eq!(guaranteed(&f.graph, t), 3);
    }
}
