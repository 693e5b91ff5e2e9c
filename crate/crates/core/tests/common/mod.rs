//! Slow, obviously-correct reference implementations used as test oracles.
#![allow(dead_code)]

use std::collections::HashMap;

use mbgame::{GameVariant, Graph};
use proptest::prelude::*;

/// Vertices reachable from `start` inside `within`, by plain BFS over an
/// edge list.
pub fn reach(g: &Graph, within: u64, start: usize) -> u64 {
    let mut seen = 1u64 << start;
    let mut queue = vec![start];
    while let Some(v) = queue.pop() {
        for w in 0..g.n() {
            if within >> w & 1 == 1 && seen >> w & 1 == 0 && g.has_edge(v, w) {
                seen |= 1 << w;
                queue.push(w);
            }
        }
    }
    seen
}

pub fn largest(g: &Graph, set: u64) -> usize {
    (0..g.n()).filter(|v| set >> v & 1 == 1).map(|v| reach(g, set, v).count_ones() as usize).max().unwrap_or(0)
}

/// Red vertices in red components that meet `target`.
pub fn touching(g: &Graph, red: u64, target: u64) -> usize {
    let mut counted = 0u64;
    for v in 0..g.n() {
        if (red & target) >> v & 1 == 1 {
            counted |= reach(g, red, v);
        }
    }
    counted.count_ones() as usize
}

/// Plain minimax over the whole game tree, memoised on the full position.
pub struct Oracle<'a> {
    g: &'a Graph,
    variant: &'a GameVariant,
    memo: HashMap<(u64, u64, u8, u8), usize>,
}

impl<'a> Oracle<'a> {
    pub fn new(g: &'a Graph, variant: &'a GameVariant) -> Self {
        Oracle { g, variant, memo: HashMap::new() }
    }

    pub fn value(&mut self) -> usize {
        self.go(0, 0, 0, 0)
    }

    fn score(&self, red: u64) -> usize {
        match self.variant {
            GameVariant::TargetSet(x) | GameVariant::SkipBudget { target: Some(x), .. } => {
                touching(self.g, red, x.as_u64())
            }
            _ => largest(self.g, red),
        }
    }

    fn budgets(&self) -> (u8, u8) {
        match self.variant {
            GameVariant::SkipBudget { alice, bob, .. } => (*alice, *bob),
            _ => (0, 0),
        }
    }

    fn go(&mut self, red: u64, blue: u64, sa: u8, sb: u8) -> usize {
        if let Some(&v) = self.memo.get(&(red, blue, sa, sb)) {
            return v;
        }
        let n = self.g.n();
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let free = all & !(red | blue);
        let alice = red.count_ones() + sa as u32 == blue.count_ones() + sb as u32;
        let mut moves: Vec<usize> = (0..n).filter(|v| free >> v & 1 == 1).collect();
        if alice && matches!(self.variant, GameVariant::Connected) && red != 0 {
            moves.retain(|&v| (0..n).any(|u| red >> u & 1 == 1 && self.g.has_edge(u, v)));
        }
        let (ba, bb) = self.budgets();
        let can_pass = free != 0 && if alice { sa < ba } else { sb < bb };
        let mut results: Vec<usize> = moves
            .iter()
            .map(|&v| if alice { self.go(red | 1 << v, blue, sa, sb) } else { self.go(red, blue | 1 << v, sa, sb) })
            .collect();
        if can_pass {
            results.push(if alice { self.go(red, blue, sa + 1, sb) } else { self.go(red, blue, sa, sb + 1) });
        }
        let v = if results.is_empty() {
            self.score(red)
        } else if alice {
            results.into_iter().max().unwrap()
        } else {
            results.into_iter().min().unwrap()
        };
        self.memo.insert((red, blue, sa, sb), v);
        v
    }
}

pub fn oracle_value(g: &Graph, variant: &GameVariant) -> usize {
    Oracle::new(g, variant).value()
}

/// Graphs on `lo..=hi` vertices, each possible edge present independently.
pub fn graphs(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut it = bits.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    if it.next().unwrap() {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

/// Connected graphs: a random spanning tree plus random extra edges.
pub fn connected_graphs(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(|n| {
        (
            proptest::collection::vec(any::<prop::sample::Index>(), n.saturating_sub(1)),
            proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2),
        )
            .prop_map(move |(parents, bits)| {
                let mut g = Graph::new(n).unwrap();
                for (i, p) in parents.iter().enumerate() {
                    g.add_edge(i + 1, p.index(i + 1)).unwrap();
                }
                let mut it = bits.into_iter();
                for u in 0..n {
                    for v in u + 1..n {
                        if it.next().unwrap() && !g.has_edge(u, v) {
                            g.add_edge(u, v).unwrap();
                        }
                    }
                }
                g
            })
    })
}
