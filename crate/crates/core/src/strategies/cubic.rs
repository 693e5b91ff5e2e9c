//! Suitable matchings of cubic graphs and the Bob strategy built on them.

use crate::error::{Error, Result};
use crate::game::{Move, Player, Position, PrivateState, Strategy};
use crate::graph::{Graph, Matching, VertexSet};

/// A matching whose removal leaves exactly two supercycles, with the vertex
/// sets of the two components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuitableMatching {
    pub matching: Matching,
    pub sides: [VertexSet; 2],
}

pub const DEFAULT_SEARCH_NODES: u64 = 20_000_000;

pub fn find_suitable_matching(g: &Graph) -> Result<Option<SuitableMatching>> {
    find_suitable_matching_with(g, DEFAULT_SEARCH_NODES)
}

/// Searches the vertex sets `A` containing vertex 0 with `G[A]` connected,
/// each time checking whether the edges leaving `A` form a suitable matching.
pub fn find_suitable_matching_with(g: &Graph, max_nodes: u64) -> Result<Option<SuitableMatching>> {
    if g.n() > 64 {
        return Err(Error::Capacity { n: g.n(), limit: 64 });
    }
    if g.n() == 0 || !g.is_regular(3) {
        return Err(Error::domain("find_suitable_matching needs a cubic graph"));
    }
    if !g.is_connected() {
        return Err(Error::domain("find_suitable_matching needs a connected graph"));
    }
    let adj: Vec<u64> = (0..g.n()).map(|v| g.neighbors(v).as_u64()).collect();
    let mut s = CutSearch { adj: &adj, all: g.vertices().as_u64(), nodes: 0, max_nodes };
    let found = s.grow(1, 0)?;
    Ok(found.map(|a| {
        let side_a = VertexSet(a as u128);
        let side_b = g.vertices() - side_a;
        let pairs = side_a.iter().filter_map(|u| (g.neighbors(u) & side_b).min().map(|v| (u, v))).collect();
        SuitableMatching { matching: Matching::new(pairs), sides: [side_a, side_b] }
    }))
}

struct CutSearch<'a> {
    adj: &'a [u64],
    all: u64,
    nodes: u64,
    max_nodes: u64,
}

impl CutSearch<'_> {
    fn cross(&self, v: usize, other: u64) -> u32 {
        (self.adj[v] & other).count_ones()
    }

    fn neighbourhood(&self, s: u64) -> u64 {
        bits(s).fold(0, |acc, v| acc | self.adj[v])
    }

    fn connected(&self, s: u64) -> bool {
        if s == 0 {
            return false;
        }
        let mut seen = s & s.wrapping_neg();
        loop {
            let next = (seen | self.neighbourhood(seen)) & s;
            if next == seen {
                return seen == s;
            }
            seen = next;
        }
    }

    fn suitable(&self, a: u64) -> bool {
        let b = self.all & !a;
        if b == 0 || !self.connected(b) {
            return false;
        }
        let (mut free_a, mut free_b) = (false, false);
        for v in bits(a) {
            match self.cross(v, b) {
                0 => free_a = true,
                1 => {}
                _ => return false,
            }
        }
        for v in bits(b) {
            match self.cross(v, a) {
                0 => free_b = true,
                1 => {}
                _ => return false,
            }
        }
        free_a && free_b
    }

    /// Each connected superset of `a` avoiding `banned` is visited once.
    fn grow(&mut self, a: u64, banned: u64) -> Result<Option<u64>> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Error::BudgetExceeded { limit: self.max_nodes });
        }
        // Banned vertices stay outside; two cut edges at one vertex are final.
        if bits(a).any(|v| self.cross(v, banned) > 1) || bits(banned).any(|v| self.cross(v, a) > 1) {
            return Ok(None);
        }
        if self.suitable(a) {
            return Ok(Some(a));
        }
        let ext = self.neighbourhood(a) & !a & !banned & self.all;
        if ext == 0 {
            return Ok(None);
        }
        let v = ext.trailing_zeros() as usize;
        if let Some(r) = self.grow(a | 1 << v, banned)? {
            return Ok(Some(r));
        }
        self.grow(a, banned | 1 << v)
    }
}

fn bits(mut s: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if s == 0 {
            None
        } else {
            let v = s.trailing_zeros() as usize;
            s &= s - 1;
            Some(v)
        }
    })
}

/// Bob's strategy for cubic graphs with a suitable matching: interior moves
/// are answered across the matching, exterior moves inside the component
/// `C*` holding Alice's first exterior vertex.
pub struct CubicBob {
    sm: SuitableMatching,
    exterior: VertexSet,
    highest: bool,
}

impl CubicBob {
    pub fn new(g: &Graph, sm: SuitableMatching) -> Result<Self> {
        sm.matching.validate(g)?;
        let exterior = g.vertices() - sm.matching.vertices();
        Ok(CubicBob { sm, exterior, highest: false })
    }

    /// Resolve "any uncoloured exterior vertex of C*" to the highest index
    /// instead of the lowest.
    pub fn highest_first(mut self) -> Self {
        self.highest = true;
        self
    }

    fn c_star(&self, state: &PrivateState) -> Option<VertexSet> {
        match state.data[0] {
            1 => Some(self.sm.sides[0]),
            2 => Some(self.sm.sides[1]),
            _ => None,
        }
    }
}

pub fn cubic_bob(g: &Graph) -> Result<CubicBob> {
    let sm = find_suitable_matching(g)?.ok_or_else(|| Error::domain("graph admits no suitable matching"))?;
    CubicBob::new(g, sm)
}

impl Strategy for CubicBob {
    fn name(&self) -> String {
        "cubic_bob".into()
    }

    fn observe(&self, _pos: &Position, player: Player, mv: Move, state: &mut PrivateState) {
        if let (Player::Alice, Move::Color(v), 0) = (player, mv, state.data[0]) {
            if self.exterior.contains(v) {
                state.data[0] = if self.sm.sides[0].contains(v) { 1 } else { 2 };
            }
        }
    }

    fn choose(&self, pos: &Position, state: &PrivateState) -> Move {
        let legal = pos.legal_vertices();
        let Some(Move::Color(v)) = state.last_opponent else {
            return pos.fallback();
        };
        if let Some(p) = self.sm.matching.partner(v) {
            return if legal.contains(p) { Move::Color(p) } else { pos.fallback() };
        }
        let options = self.c_star(state).map_or(VertexSet::EMPTY, |c| c & self.exterior & legal);
        let pick = if self.highest { options.max() } else { options.min() };
        pick.map_or_else(|| pos.fallback(), Move::Color)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::GameVariant;
    use crate::generators;
    use crate::verify::{verify_strategy_exhaustive, VerifyOptions};

    fn check(g: &Graph, sm: &SuitableMatching) {
        assert!(sm.matching.validate(g).is_ok());
        for side in sm.sides {
            let h = crate::graph::induced(g, side).unwrap().graph;
            assert!(h.is_connected() && h.min_degree() >= 2 && h.max_degree() == 3);
        }
        assert_eq!(sm.sides[0] | sm.sides[1], g.vertices());
        // Every edge between the sides is in the matching.
        for (u, v) in g.edges() {
            if sm.sides[0].contains(u) != sm.sides[0].contains(v) {
                assert!(sm.matching.pairs.contains(&(u, v)));
            }
        }
    }

    #[test]
    fn k4_has_none() {
        let k4 = generators::complete(4).unwrap().graph;
        assert_eq!(find_suitable_matching(&k4).unwrap(), None);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(find_suitable_matching(&generators::cycle(6).unwrap().graph).is_err());
        let two = generators::disjoint_cliques(4, 2).unwrap().graph;
        assert!(find_suitable_matching(&two).is_err());
    }

    #[test]
    fn prism_splits() {
        let g = generators::prism(6).unwrap().graph;
        let sm = find_suitable_matching(&g).unwrap().unwrap();
        check(&g, &sm);
    }

    #[test]
    fn bob_disconnects_red() {
        let g = generators::prism(6).unwrap().graph;
        let bob = cubic_bob(&g).unwrap();
        let r =
            verify_strategy_exhaustive(&g, &GameVariant::Plain, &bob, Player::Bob, VerifyOptions::default()).unwrap();
        assert!(r.value < g.n() / 2);
        let hi = cubic_bob(&g).unwrap().highest_first();
        let r =
            verify_strategy_exhaustive(&g, &GameVariant::Plain, &hi, Player::Bob, VerifyOptions::default()).unwrap();
        assert!(r.value < g.n() / 2);
    }

    #[test]
    fn large_random_cubic() {
        for seed in 0..3 {
            let g = generators::random_cubic(20, seed).unwrap().graph;
            let sm = find_suitable_matching(&g).unwrap().expect("order >= 18 admits one");
            check(&g, &sm);
        }
    }
}
