//! Winning source-game strategies translated onto the constructed graphs.

use super::build::{CnfLayout, PlanarLayout, ReductionKind, ReductionOutput, Source};
use super::cnf::CnfSolver;
use super::hex::HexSolver;
use crate::error::{Error, Result};
use crate::game::{Move, Player, Position, PrivateState, Strategy};
use crate::graph::VertexSet;

/// Lifts the source game's winning strategy for `side` onto `out.g`. Fails
/// when `side` does not win the source instance.
pub fn lift_strategy(out: &ReductionOutput, side: Player) -> Result<Box<dyn Strategy>> {
    match (&out.source, out.kind) {
        (Source::Cnf(cnf), ReductionKind::Bipartite | ReductionKind::Split) => {
            let solver = CnfSolver::new(cnf)?;
            let alice_wins = solver.alice_wins(0, 0, Player::Alice);
            if alice_wins != (side == Player::Alice) {
                return Err(Error::domain(format!("{side} does not win the source CNF game")));
            }
            let layout =
                CnfLayout { vars: cnf.vars, clauses: cnf.clauses.len(), guards: out.kind == ReductionKind::Bipartite };
            Ok(Box::new(CnfLift { side, layout, solver, kind: out.kind }))
        }
        (Source::Hex(hex), ReductionKind::Planar) => {
            let solver = HexSolver::new(hex)?;
            let alice_wins = solver.alice_wins(VertexSet::EMPTY, VertexSet::EMPTY, Player::Alice);
            if alice_wins != (side == Player::Alice) {
                return Err(Error::domain(format!("{side} does not win the source Hex game")));
            }
            let lift = PlanarLift { side, layout: PlanarLayout { n: hex.h.n() }, s: hex.s, t: hex.t, solver };
            Ok(Box::new(lift))
        }
        _ => Err(Error::domain("reduction output carries the wrong source instance")),
    }
}

/// Variable moves go to the CNF solver; guards and clause copies are paired.
struct CnfLift {
    side: Player,
    kind: ReductionKind,
    layout: CnfLayout,
    solver: CnfSolver,
}

impl CnfLift {
    fn source_move(&self, pos: &Position) -> Option<usize> {
        let vars = self.layout.var_set();
        let t = (pos.config.red & vars).as_u64() as u32;
        let f = (pos.config.blue & vars).as_u64() as u32;
        self.solver.best_move(t, f, self.side).map(|x| self.layout.var(x))
    }

    fn partner(&self, v: usize) -> Option<usize> {
        let lay = &self.layout;
        if v < lay.vars {
            None
        } else if v < lay.vars + 2 * lay.clauses {
            Some(lay.vars + ((v - lay.vars) ^ 1))
        } else {
            Some(lay.guard(1 - (v - lay.guard(0))))
        }
    }
}

impl Strategy for CnfLift {
    fn name(&self) -> String {
        format!("{}_{}_lift", self.kind, self.side.to_string().to_lowercase())
    }

    fn choose(&self, pos: &Position, state: &PrivateState) -> Move {
        let legal = pos.legal_vertices();
        let reply = match state.last_opponent {
            Some(Move::Color(v)) if v < self.layout.vars => self.source_move(pos),
            Some(Move::Color(v)) => self.partner(v).filter(|&p| legal.contains(p)),
            _ => self.source_move(pos),
        };
        match reply.or_else(|| self.source_move(pos)) {
            Some(v) if legal.contains(v) => Move::Color(v),
            _ => pos.fallback(),
        }
    }
}

/// The planar construction's strategies: an opening on the hubs for Alice,
/// in-kind answers for Bob, and leaf pairing around every hub.
struct PlanarLift {
    side: Player,
    layout: PlanarLayout,
    s: usize,
    t: usize,
    solver: HexSolver,
}

impl PlanarLift {
    fn hubs(&self, range: std::ops::Range<usize>) -> VertexSet {
        range.map(|i| self.layout.hub(i)).collect()
    }

    fn h(&self) -> VertexSet {
        (0..self.layout.n).collect()
    }

    fn hex_move(&self, pos: &Position) -> Option<usize> {
        let h = self.h();
        self.solver.best_move(pos.config.red & h, pos.config.blue & h, self.side)
    }

    /// Another free leaf of the hub that `v` hangs on.
    fn sibling(&self, pos: &Position, v: usize) -> Option<usize> {
        let hub = self.layout.hub_of_leaf(v)?;
        (self.layout.leaves_of(hub) & pos.legal_vertices()).min()
    }

    fn bob(&self, pos: &Position, state: &PrivateState) -> Option<usize> {
        let legal = pos.legal_vertices();
        let Some(Move::Color(v)) = state.last_opponent else {
            return None;
        };
        let s_side = self.hubs(0..3) | VertexSet::singleton(self.s);
        let t_side = self.hubs(3..6) | VertexSet::singleton(self.t);
        if s_side.contains(v) {
            (s_side & legal).min()
        } else if t_side.contains(v) {
            (t_side & legal).min()
        } else if v < self.layout.n {
            self.hex_move(pos)
        } else {
            self.sibling(pos, v)
        }
    }

    fn alice(&self, pos: &Position, state: &PrivateState) -> Option<usize> {
        let legal = pos.legal_vertices();
        let red = pos.config.red;
        let (s_hubs, t_hubs) = (self.hubs(0..3), self.hubs(3..6));
        let free_of = |set: VertexSet| (set & legal).min();
        // Once two hubs on one side are red, she grows them through leaves.
        for (hubs, range) in [(s_hubs, 0..3), (t_hubs, 3..6)] {
            if (red & hubs).len() >= 2 {
                let leaves = range.clone().fold(VertexSet::EMPTY, |acc, i| {
                    if red.contains(self.layout.hub(i)) {
                        acc | self.layout.leaves_of(i)
                    } else {
                        acc
                    }
                });
                return free_of(leaves).or_else(|| self.hex_move(pos));
            }
        }
        match red.len() {
            0 => return Some(self.s).filter(|&s| legal.contains(s)),
            1 | 3 => {
                let opening = if red.len() == 1 { s_hubs } else { t_hubs };
                return free_of(opening);
            }
            2 => return free_of(s_hubs).or(Some(self.t)).filter(|&v| legal.contains(v)),
            4 if red.contains(self.t) => {
                if let Some(h) = free_of(t_hubs) {
                    return Some(h);
                }
                return self.hex_move(pos);
            }
            _ => {}
        }
        match state.last_opponent {
            Some(Move::Color(v)) if v < self.layout.n => self.hex_move(pos),
            Some(Move::Color(v)) if self.layout.hub_of_leaf(v).is_some() => self.sibling(pos, v),
            _ => self.hex_move(pos),
        }
    }
}

impl Strategy for PlanarLift {
    fn name(&self) -> String {
        format!("planar_{}_lift", self.side.to_string().to_lowercase())
    }

    fn choose(&self, pos: &Position, state: &PrivateState) -> Move {
        let pick = match self.side {
            Player::Alice => self.alice(pos, state),
            Player::Bob => self.bob(pos, state),
        };
        match pick.or_else(|| self.hex_move(pos)) {
            Some(v) if pos.legal_vertices().contains(v) => Move::Color(v),
            _ => pos.fallback(),
        }
    }
}
