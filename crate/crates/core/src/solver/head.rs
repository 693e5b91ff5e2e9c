//! The pass-aware compound game on the head of a pseudo-spider.
//!
//! Play the target-set game on `G1` with target `K`, where each player may
//! pass once. Alice's goal (the `Sa2` condition) depends on who passed:
//! - Bob never passed: Alice passed exactly once and scored at least `c*`;
//! - Bob passed before Alice did: Alice scored at least `c* + 1` without
//!   passing afterwards;
//! - Bob passed after Alice: Alice scored at least `c*`.
//!
//! Bob's goal (`Sb2`) mirrors it with `c*`, `c* - 1` and `c*`.

use rustc_hash::FxHashMap;

use super::board::Board;
use super::SolveOptions;
use crate::error::{Error, Result};
use crate::game::{GameVariant, Move, Player};
use crate::graph::{Graph, VertexSet};

/// Heads beyond this size are rejected.
pub const HEAD_LIMIT: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HeadAnalysis {
    pub c_star: usize,
    pub exists_sa2: bool,
    pub exists_sb2: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct HeadState {
    pub red: u64,
    pub blue: u64,
    pub alice_passed: bool,
    pub bob_passed: bool,
    /// Who passed first, if anyone has.
    pub first_pass: Option<Player>,
}

impl HeadState {
    pub fn mover(&self) -> Player {
        if self.red.count_ones() + self.alice_passed as u32 == self.blue.count_ones() + self.bob_passed as u32 {
            Player::Alice
        } else {
            Player::Bob
        }
    }

    pub fn play(&self, m: Move) -> HeadState {
        let mut s = *self;
        let p = self.mover();
        match (p, m) {
            (Player::Alice, Move::Color(v)) => s.red |= 1 << v,
            (Player::Bob, Move::Color(v)) => s.blue |= 1 << v,
            (Player::Alice, Move::Pass) => s.alice_passed = true,
            (Player::Bob, Move::Pass) => s.bob_passed = true,
        }
        if m == Move::Pass && s.first_pass.is_none() {
            s.first_pass = Some(p);
        }
        s
    }
}

/// Solver for the compound game; `late_pass` allows the player meeting the
/// condition to pass after the opponent's pass (strengthening the opponent
/// case to the `+1` / `-1` threshold rather than forbidding it).
pub struct HeadGame {
    board: Board,
    target: u64,
    c_star: u32,
    late_pass: bool,
    memo: [FxHashMap<HeadState, bool>; 2],
}

impl HeadGame {
    pub fn new(g1: &Graph, k: VertexSet, late_pass: bool) -> Result<Self> {
        if g1.n() > HEAD_LIMIT {
            return Err(Error::Capacity { n: g1.n(), limit: HEAD_LIMIT });
        }
        if !k.is_subset(g1.vertices()) {
            return Err(Error::domain("K is not a subset of the head"));
        }
        let c_star = crate::solver::cg_with(g1, &GameVariant::TargetSet(k), &SolveOptions::default())?.value as u32;
        Ok(HeadGame {
            board: Board::new(g1)?,
            target: k.as_u64(),
            c_star,
            late_pass,
            memo: [FxHashMap::default(), FxHashMap::default()],
        })
    }

    pub fn c_star(&self) -> usize {
        self.c_star as usize
    }

    fn goal_met(&self, side: Player, s: &HeadState) -> bool {
        let score = self.board.target_total(s.red, self.target) as i64;
        let c = self.c_star as i64;
        let (mine, theirs) = match side {
            Player::Alice => (s.alice_passed, s.bob_passed),
            Player::Bob => (s.bob_passed, s.alice_passed),
        };
        let meets = |t: i64| match side {
            Player::Alice => score >= t,
            Player::Bob => score <= t,
        };
        let better = match side {
            Player::Alice => c + 1,
            Player::Bob => c - 1,
        };
        match (theirs, mine) {
            (false, passed) => passed && meets(c),
            (true, false) => meets(better),
            (true, true) if s.first_pass == Some(side) => meets(c),
            (true, true) => self.late_pass && meets(better),
        }
    }

    fn moves(&self, s: &HeadState) -> Vec<Move> {
        let free = self.board.all & !(s.red | s.blue);
        let mut out = Vec::new();
        let mut rest = free;
        while rest != 0 {
            out.push(Move::Color(rest.trailing_zeros() as usize));
            rest &= rest - 1;
        }
        let passed = match s.mover() {
            Player::Alice => s.alice_passed,
            Player::Bob => s.bob_passed,
        };
        if !passed && free != 0 {
            out.push(Move::Pass);
        }
        out
    }

    /// Whether `side` can force its goal from `s`.
    pub fn wins(&mut self, side: Player, s: &HeadState) -> bool {
        let free = self.board.all & !(s.red | s.blue);
        if free == 0 {
            return self.goal_met(side, s);
        }
        let idx = (side == Player::Bob) as usize;
        if let Some(&v) = self.memo[idx].get(s) {
            return v;
        }
        let mine = s.mover() == side;
        let mut result = !mine;
        for m in self.moves(s) {
            let w = self.wins(side, &s.play(m));
            if mine && w {
                result = true;
                break;
            }
            if !mine && !w {
                result = false;
                break;
            }
        }
        self.memo[idx].insert(*s, result);
        result
    }

    /// A move for `side` preserving its forced win, if it has one here.
    /// Colouring moves are preferred over passing.
    pub fn winning_move(&mut self, side: Player, s: &HeadState) -> Option<Move> {
        if s.mover() != side {
            return None;
        }
        self.moves(s).into_iter().find(|&m| self.wins(side, &s.play(m)))
    }

    /// Whether passing right now keeps `side`'s forced win.
    pub fn pass_wins(&mut self, side: Player, s: &HeadState) -> bool {
        s.mover() == side && self.moves(s).contains(&Move::Pass) && self.wins(side, &s.play(Move::Pass))
    }

    pub fn analysis(&mut self) -> HeadAnalysis {
        let root = HeadState::default();
        HeadAnalysis {
            c_star: self.c_star as usize,
            exists_sa2: self.wins(Player::Alice, &root),
            exists_sb2: self.wins(Player::Bob, &root),
        }
    }
}

/// `c* = c_g(G1, K)` and whether the pass-aware strategies `Sa2` / `Sb2`
/// exist, with passes after the opponent's pass forbidden.
pub fn analyze_head(g1: &Graph, k: VertexSet) -> Result<HeadAnalysis> {
    analyze_head_with(g1, k, false)
}

pub fn analyze_head_with(g1: &Graph, k: VertexSet, late_pass: bool) -> Result<HeadAnalysis> {
    Ok(HeadGame::new(g1, k, late_pass)?.analysis())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_head() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let a = analyze_head(&k2, VertexSet::full(2)).unwrap();
        assert_eq!(a.c_star, 1);
        assert!(!(a.exists_sa2 && a.exists_sb2));
    }

    #[test]
    fn single_vertex_head() {
        let k1 = Graph::new(1).unwrap();
        let a = analyze_head(&k1, VertexSet::full(1)).unwrap();
        assert_eq!(a.c_star, 1);
        assert!(!a.exists_sa2);
    }

    #[test]
    fn rejects_large_heads() {
        let g = Graph::new(HEAD_LIMIT + 1).unwrap();
        assert!(analyze_head(&g, VertexSet::EMPTY).is_err());
    }
}
