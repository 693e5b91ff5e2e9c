//! Strategies tied to the index layouts of the generated families.

use super::pairing::{PairingPlan, PairingStrategy};
use crate::error::{Error, Result};
use crate::game::{Move, Position, PrivateState, Strategy};
use crate::generators::{self, Family};
use crate::graph::{Graph, VertexSet};

fn same_graph(g: &Graph, f: &Family) -> Result<()> {
    if g.n() == f.graph.n() && g.edges() == f.graph.edges() {
        Ok(())
    } else {
        Err(Error::domain(format!("graph does not match the {} layout with the given parameters", f.name)))
    }
}

/// Opens on `u_1^0` and answers a move in layer `j >= 1` with the other
/// vertex of that layer.
pub fn regular4_alice(g: &Graph) -> Result<PairingStrategy> {
    let layers = g.n() / 2;
    same_graph(g, &generators::regular4_chain(layers)?)?;
    let plan = PairingPlan {
        pairs: (1..layers).map(|j| (2 * j, 2 * j + 1)).collect(),
        triggers: Vec::new(),
        opening: Some(0),
    };
    PairingStrategy::new("regular4_alice", g, &plan)
}

fn chain_shape(g: &Graph) -> Result<(usize, usize)> {
    let d = g.max_degree();
    if d == 0 || !g.n().is_multiple_of(d + 1) {
        return Err(Error::domain("graph order is not a multiple of d + 1"));
    }
    Ok((d, g.n() / (d + 1)))
}

/// Answers within the pairs `{v1, v2}`, `{v3, v4}` of each copy, and a move
/// among `v5..v_{d+1}` with another vertex of that group.
pub fn regular5_alice(g: &Graph) -> Result<PairingStrategy> {
    let (d, copies) = chain_shape(g)?;
    same_graph(g, &generators::regular5_chain(d, copies)?)?;
    let b = d + 1;
    let mut plan = PairingPlan { opening: Some(0), ..Default::default() };
    for i in 0..copies {
        let base = i * b;
        plan.pairs.push((base, base + 1));
        plan.pairs.push((base + 2, base + 3));
        let group: Vec<usize> = (base + 4..base + b).collect();
        for &v in &group {
            plan.triggers.push((v, group.iter().copied().filter(|&w| w != v).collect()));
        }
    }
    PairingStrategy::new("regular5_alice", g, &plan)
}

/// Answers `u_i` with `v_{i-1}`, `v_i` with `u_{i+1}`, and an internal
/// vertex with another internal vertex of the same copy.
pub fn clique_chain_bob(g: &Graph) -> Result<PairingStrategy> {
    let (d, copies) = chain_shape(g)?;
    same_graph(g, &generators::clique_chain(d, copies)?)?;
    let b = d + 1;
    let mut plan = PairingPlan::default();
    for i in 0..copies {
        let base = i * b;
        let prev = ((i + copies - 1) % copies) * b;
        let next = ((i + 1) % copies) * b;
        plan.triggers.push((base, vec![prev + 1]));
        plan.triggers.push((base + 1, vec![next]));
        let internal: Vec<usize> = (base + 2..base + b).collect();
        for &v in &internal {
            plan.triggers.push((v, internal.iter().copied().filter(|&w| w != v).collect()));
        }
    }
    PairingStrategy::new("clique_chain_bob", g, &plan)
}

/// Answers each move with the same column's vertex in the other row.
pub fn king_mirror_alice(g: &Graph) -> Result<PairingStrategy> {
    let m = g.n() / 2;
    same_graph(g, &generators::king_grid_2rows(m)?)?;
    PairingStrategy::new("king_mirror_alice", g, &PairingPlan::from_pairs((0..m).map(|c| (c, m + c))))
}

/// Answers `v` with its right neighbour, else its left neighbour.
pub fn cartesian_bob(g: &Graph, rows: Option<usize>, cols: Option<usize>) -> Result<PairingStrategy> {
    let n = g.n();
    let (rows, cols) = match (rows, cols) {
        (Some(r), Some(c)) => (r, c),
        (Some(r), None) if r > 0 => (r, n / r),
        (None, Some(c)) if c > 0 => (n / c, c),
        _ => (1..=n)
            .filter(|r| n.is_multiple_of(*r) && r * r <= n)
            .map(|r| (r, n / r))
            .find(|&(r, c)| generators::cartesian_grid(r, c).is_ok_and(|f| same_graph(g, &f).is_ok()))
            .ok_or_else(|| Error::domain("graph is not a grid in row-major layout"))?,
    };
    same_graph(g, &generators::cartesian_grid(rows, cols)?)?;
    let mut plan = PairingPlan::default();
    for v in 0..n {
        let c = v % cols;
        let mut resp = Vec::new();
        if c + 1 < cols {
            resp.push(v + 1);
        }
        if c > 0 {
            resp.push(v - 1);
        }
        plan.triggers.push((v, resp));
    }
    PairingStrategy::new("cartesian_bob", g, &plan)
}

/// Answers a vertex with its partner across the matching between the
/// hexagonal cells.
pub fn hex_pairing_bob(g: &Graph, width: Option<usize>) -> Result<PairingStrategy> {
    if g.n() == 0 || !g.n().is_multiple_of(6) {
        return Err(Error::domain("hex patch order must be a positive multiple of 6"));
    }
    let f = generators::hex_patch(g.n() / 6, width)?;
    same_graph(g, &f)?;
    let m = f.matching.expect("hex patches carry their matching");
    PairingStrategy::new("hex_pairing_bob", g, &PairingPlan::from_pairs(m.pairs))
}

/// Play in `K` while possible, then avoid the `S` vertices matched to blue
/// `K` vertices, taking them last.
pub struct SpiderExhaust {
    name: &'static str,
    k: usize,
}

pub fn spider_exhaust(g: &Graph, k: usize, alice: bool) -> Result<SpiderExhaust> {
    let n = g.n();
    if k < 2 || n < 2 * k {
        return Err(Error::domain("spider needs k >= 2 and n >= 2k"));
    }
    let s_set: VertexSet = (0..k).collect();
    let k_set: VertexSet = (k..2 * k).collect();
    let r_set: VertexSet = (2 * k..n).collect();
    for i in 0..k {
        if g.neighbors(i) != VertexSet::singleton(k + i) {
            return Err(Error::domain(format!("s{i} is not matched to k{i} alone")));
        }
        let kv = k + i;
        if (k_set - VertexSet::singleton(kv)) - g.neighbors(kv) != VertexSet::EMPTY || !r_set.is_subset(g.neighbors(kv))
        {
            return Err(Error::domain(format!("k{i} is not joined to the rest of K and to R")));
        }
    }
    debug_assert!(s_set.iter().all(|s| !g.neighbors(s).intersects(s_set)));
    let name = if alice { "spider_exhaust_alice" } else { "spider_exhaust_bob" };
    Ok(SpiderExhaust { name, k })
}

impl Strategy for SpiderExhaust {
    fn name(&self) -> String {
        format!("{}:k={}", self.name, self.k)
    }

    fn choose(&self, pos: &Position, _state: &PrivateState) -> Move {
        let k = self.k;
        let legal = pos.legal_vertices();
        let k_set: VertexSet = (k..2 * k).collect();
        if let Some(v) = (legal & k_set).min() {
            return Move::Color(v);
        }
        let stranded: VertexSet = (0..k).filter(|&i| pos.config.blue.contains(k + i)).collect();
        match (legal - stranded).min() {
            Some(v) => Move::Color(v),
            None => pos.fallback(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{GameVariant, Player};
    use crate::verify::{verify_strategy_exhaustive, VerifyOptions};

    fn value(g: &Graph, s: &dyn Strategy, side: Player) -> usize {
        verify_strategy_exhaustive(g, &GameVariant::Plain, s, side, VerifyOptions::default()).unwrap().value
    }

    #[test]
    fn regular4_alice_connects() {
        let g = generators::regular4_chain(4).unwrap().graph;
        assert_eq!(value(&g, &regular4_alice(&g).unwrap(), Player::Alice), 4);
    }

    #[test]
    fn clique_chain_bob_caps() {
        let g = generators::clique_chain(3, 2).unwrap().graph;
        assert!(value(&g, &clique_chain_bob(&g).unwrap(), Player::Bob) <= 3);
    }

    #[test]
    fn king_mirror() {
        let g = generators::king_grid_2rows(4).unwrap().graph;
        assert_eq!(value(&g, &king_mirror_alice(&g).unwrap(), Player::Alice), 4);
    }

    #[test]
    fn cartesian_infers_shape() {
        let g = generators::cartesian_grid(2, 3).unwrap().graph;
        let s = cartesian_bob(&g, None, None).unwrap();
        assert!(value(&g, &s, Player::Bob) <= 4);
        assert!(cartesian_bob(&generators::cycle(6).unwrap().graph, None, None).is_err());
    }

    #[test]
    fn hex_and_spider() {
        let g = generators::hex_patch(2, None).unwrap().graph;
        assert!(value(&g, &hex_pairing_bob(&g, None).unwrap(), Player::Bob) <= 6);
        let f = generators::spider(generators::SpiderFlavor::Matched, 4, 0, generators::RKind::Independent).unwrap();
        assert!(value(&f.graph, &spider_exhaust(&f.graph, 4, false).unwrap(), Player::Bob) <= 3);
        let anti = generators::spider(generators::SpiderFlavor::Antimatched, 3, 0, generators::RKind::Independent);
        assert!(spider_exhaust(&anti.unwrap().graph, 3, false).is_err());
    }

    #[test]
    fn layout_mismatch_is_reported() {
        let g = generators::cycle(8).unwrap().graph;
        assert!(regular4_alice(&g).is_err());
        assert!(king_mirror_alice(&g).is_err());
    }
}
