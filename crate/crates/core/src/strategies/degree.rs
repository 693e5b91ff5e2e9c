//! Alice strategies built around a maximum-degree opening.

use crate::error::{Error, Result};
use crate::game::{Move, Position, PrivateState, Strategy};
use crate::graph::{Graph, VertexSet};

fn max_degree_vertex(g: &Graph) -> Option<usize> {
    let d = g.max_degree();
    g.vertices().iter().find(|&v| g.degree(v) == d)
}

/// Opens on a maximum-degree vertex `u`, then takes `u`'s neighbours in
/// index order while any is free.
pub struct AliceMaxDegree {
    hub: usize,
    around: VertexSet,
}

pub fn alice_max_degree(g: &Graph) -> Result<AliceMaxDegree> {
    let hub = max_degree_vertex(g).ok_or_else(|| Error::domain("graph has no vertices"))?;
    Ok(AliceMaxDegree { hub, around: g.neighbors(hub) })
}

impl Strategy for AliceMaxDegree {
    fn name(&self) -> String {
        "alice_max_degree".into()
    }

    fn choose(&self, pos: &Position, _state: &PrivateState) -> Move {
        if pos.legal_vertices().contains(self.hub) {
            return Move::Color(self.hub);
        }
        pos.prefer(self.around)
    }
}

/// Keeps the red set connected while shrinking the set of free vertices it
/// does not yet dominate; valid when `Delta + delta >= n`.
pub struct AliceDegreeSum {
    hub: usize,
}

pub fn alice_degree_sum(g: &Graph) -> Result<AliceDegreeSum> {
    let n = g.n();
    if n == 0 || !g.is_connected() {
        return Err(Error::domain("alice_degree_sum needs a nonempty connected graph"));
    }
    if g.max_degree() + g.min_degree() < n {
        return Err(Error::domain(format!(
            "alice_degree_sum needs max degree + min degree >= {n}, found {} + {}",
            g.max_degree(),
            g.min_degree()
        )));
    }
    Ok(AliceDegreeSum { hub: max_degree_vertex(g).expect("nonempty") })
}

impl Strategy for AliceDegreeSum {
    fn name(&self) -> String {
        "alice_degree_sum".into()
    }

    fn choose(&self, pos: &Position, _state: &PrivateState) -> Move {
        let g = pos.graph;
        let red = pos.config.red;
        let legal = pos.legal_vertices();
        if red.is_empty() {
            return if legal.contains(self.hub) { Move::Color(self.hub) } else { pos.fallback() };
        }
        let comp = if red.contains(self.hub) { g.component_within(red, self.hub) } else { red };
        let free = pos.uncoloured();
        let near = g.open_neighborhood(comp);
        let undominated = free - g.closed_neighborhood(comp);
        for v in undominated.iter() {
            if let Some(w) = (g.neighbors(v) & near & legal).min() {
                return Move::Color(w);
            }
        }
        pos.prefer(near)
    }
}
