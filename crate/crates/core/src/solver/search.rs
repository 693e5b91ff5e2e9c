use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::board::{Board, Rules, Scoring};
use super::Budget;
use crate::error::Result;
use crate::game::Move;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct State {
    pub red: u64,
    pub blue: u64,
    pub a_skips: u8,
    pub b_skips: u8,
    pub alice_to_move: bool,
}

impl State {
    pub fn initial() -> Self {
        State { red: 0, blue: 0, a_skips: 0, b_skips: 0, alice_to_move: true }
    }

    fn key(&self) -> (u64, u64, u8) {
        (self.red, self.blue, self.a_skips | (self.b_skips << 1) | ((self.alice_to_move as u8) << 2))
    }
}

const FULL_LO: i32 = -1;
const FULL_HI: i32 = 1000;

/// Depth-first minimax with a transposition table of value bounds.
pub(crate) struct Search {
    board: Arc<Board>,
    rules: Rules,
    budget: Budget,
    pruning: bool,
    tt: FxHashMap<(u64, u64, u8), (u8, u8)>,
}

impl Search {
    pub fn new(board: Arc<Board>, rules: Rules, budget: Budget, pruning: bool) -> Self {
        Search { board, rules, budget, pruning, tt: FxHashMap::default() }
    }

    #[inline]
    fn free(&self, s: &State) -> u64 {
        self.board.all & !(s.red | s.blue)
    }

    pub fn is_terminal(&self, s: &State) -> bool {
        let free = self.free(s);
        free == 0
            || (self.rules.connected && s.alice_to_move && s.red != 0 && self.board.neighbourhood(s.red) & free == 0)
    }

    pub fn static_score(&self, s: &State) -> u8 {
        match self.rules.scoring {
            Scoring::Largest => self.board.largest(s.red).1 as u8,
            Scoring::Target(x) => self.board.target_total(s.red, x) as u8,
        }
    }

    /// Most vertices Alice can still colour, passes included in the count
    /// of turns.
    fn alice_remaining(&self, s: &State) -> u32 {
        let u = self.free(s).count_ones() + (self.rules.bob_skips - s.b_skips) as u32;
        if s.alice_to_move {
            u.div_ceil(2)
        } else {
            u / 2
        }
    }

    fn upper(&self, s: &State) -> u8 {
        let rem = self.alice_remaining(s);
        let open = self.board.all & !s.blue;
        let free = self.free(s);
        match self.rules.scoring {
            Scoring::Largest => {
                let mut rest = open;
                let mut best = 0;
                while rest != 0 {
                    let c = self.board.component(open, rest & rest.wrapping_neg());
                    rest &= !c;
                    let v = (c & s.red).count_ones() + (c & free).count_ones().min(rem);
                    best = best.max(v);
                }
                best as u8
            }
            Scoring::Target(x) => {
                let mut rest = open & x;
                let (mut red, mut avail) = (0, 0);
                while rest != 0 {
                    let c = self.board.component(open, rest & rest.wrapping_neg());
                    rest &= !c;
                    red += (c & s.red).count_ones();
                    avail += (c & free).count_ones();
                }
                (red + avail.min(rem)) as u8
            }
        }
    }

    /// Once some red component dominates the graph every later red vertex
    /// joins it, so the final score is known.
    fn settled(&self, s: &State) -> Option<u8> {
        if self.rules.has_skips() || s.red == 0 {
            return None;
        }
        let c = self.board.dominating_component(s.red)?;
        if let Scoring::Target(x) = self.rules.scoring {
            if c & x == 0 {
                return None;
            }
        }
        Some((s.red.count_ones() + self.alice_remaining(s)) as u8)
    }

    pub fn child(&self, s: &State, m: Move) -> State {
        let mut c = *s;
        match (m, s.alice_to_move) {
            (Move::Color(v), true) => c.red |= 1 << v,
            (Move::Color(v), false) => c.blue |= 1 << v,
            (Move::Pass, true) => c.a_skips += 1,
            (Move::Pass, false) => c.b_skips += 1,
        }
        c.alice_to_move = !s.alice_to_move;
        c
    }

    /// Legal moves, most promising first: vertices next to Alice's largest
    /// red component, then next to any red vertex, then by degree among
    /// non-blue vertices. Passing comes last.
    pub fn ordered_moves(&self, s: &State) -> Vec<Move> {
        let free = self.free(s);
        let legal = if s.alice_to_move && self.rules.connected && s.red != 0 {
            self.board.neighbourhood(s.red) & free
        } else {
            free
        };
        let (main, _) = self.board.largest(s.red);
        let near_main = self.board.neighbourhood(main);
        let near_red = self.board.neighbourhood(s.red);
        let open = !s.blue;
        let mut vs: Vec<(u32, usize)> = Vec::with_capacity(legal.count_ones() as usize);
        let mut rest = legal;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let bit = 1u64 << v;
            let tier = if near_main & bit != 0 {
                0
            } else if near_red & bit != 0 {
                1
            } else {
                2
            };
            let deg = (self.board.adj[v] & open).count_ones();
            vs.push(((tier << 8) | (64 - deg), v));
        }
        vs.sort_unstable();
        let mut out: Vec<Move> = vs.into_iter().map(|(_, v)| Move::Color(v)).collect();
        let can_pass =
            if s.alice_to_move { s.a_skips < self.rules.alice_skips } else { s.b_skips < self.rules.bob_skips };
        if can_pass && free != 0 {
            out.push(Move::Pass);
        }
        out
    }

    pub fn exact(&mut self, s: &State) -> Result<u8> {
        self.search(s, FULL_LO, FULL_HI)
    }

    /// Fail-soft alpha-beta: the result is exact inside `(alpha, beta)`, an
    /// upper bound at or below `alpha`, a lower bound at or above `beta`.
    fn search(&mut self, s: &State, alpha: i32, beta: i32) -> Result<u8> {
        let lb = self.static_score(s);
        if self.is_terminal(s) {
            return Ok(lb);
        }
        if let Some(v) = self.settled(s) {
            return Ok(v);
        }
        let ub = self.upper(s);
        if lb >= ub {
            return Ok(lb);
        }
        let (mut alpha, mut beta) = (alpha, beta);
        if self.pruning {
            if ub as i32 <= alpha {
                return Ok(ub);
            }
            if lb as i32 >= beta {
                return Ok(lb);
            }
        }
        let key = s.key();
        let (mut lo, mut hi) = (lb, ub);
        if let Some(&(l, h)) = self.tt.get(&key) {
            lo = lo.max(l);
            hi = hi.min(h);
            if lo >= hi {
                return Ok(lo);
            }
            if self.pruning {
                if lo as i32 >= beta {
                    return Ok(lo);
                }
                if hi as i32 <= alpha {
                    return Ok(hi);
                }
            }
        }
        if self.pruning {
            alpha = alpha.max(lo as i32);
            beta = beta.min(hi as i32);
        }
        self.budget.tick()?;

        let moves = self.ordered_moves(s);
        let mut best;
        if s.alice_to_move {
            best = FULL_LO;
            for m in moves {
                let c = self.child(s, m);
                let a = if self.pruning { alpha.max(best) } else { FULL_LO };
                let b = if self.pruning { beta } else { FULL_HI };
                let v = self.search(&c, a, b)? as i32;
                best = best.max(v);
                if self.pruning && (best >= beta || best >= hi as i32) {
                    break;
                }
            }
        } else {
            best = FULL_HI;
            for m in moves {
                let c = self.child(s, m);
                let a = if self.pruning { alpha } else { FULL_LO };
                let b = if self.pruning { beta.min(best) } else { FULL_HI };
                let v = self.search(&c, a, b)? as i32;
                best = best.min(v);
                if self.pruning && (best <= alpha || best <= lo as i32) {
                    break;
                }
            }
        }
        let v = best as u8;
        let entry = if !self.pruning || (best > alpha && best < beta) {
            (v, v)
        } else if best <= alpha {
            (lo, v.min(hi))
        } else {
            (v.max(lo), hi)
        };
        let entry = if entry.0 >= entry.1 { (entry.0, entry.0) } else { entry };
        self.tt.insert(key, entry);
        Ok(v)
    }

    /// First move in search order that keeps the position's value.
    pub fn best_move(&mut self, s: &State) -> Result<Option<Move>> {
        if self.is_terminal(s) {
            return Ok(None);
        }
        let v = self.exact(s)? as i32;
        for m in self.ordered_moves(s) {
            let c = self.child(s, m);
            let keeps = if s.alice_to_move {
                self.search(&c, v - 1, v)? as i32 >= v
            } else {
                self.search(&c, v, v + 1)? as i32 <= v
            };
            if keeps {
                return Ok(Some(m));
            }
        }
        unreachable!("some move attains the minimax value")
    }

    pub fn principal_variation(&mut self, from: State) -> Result<Vec<Move>> {
        let mut s = from;
        let mut out = Vec::new();
        while let Some(m) = self.best_move(&s)? {
            out.push(m);
            s = self.child(&s, m);
        }
        Ok(out)
    }
}
