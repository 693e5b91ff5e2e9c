//! Bounded-round search: can Alice own a connected dominating set after a
//! fixed number of her moves, whatever Bob does?

use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::board::Board;
use super::{Budget, SolveOptions};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn can_force_cds_within(g: &Graph, rounds: usize) -> Result<bool> {
    can_force_cds_within_opts(g, rounds, &SolveOptions::default())
}

pub fn can_force_cds_within_opts(g: &Graph, rounds: usize, opts: &SolveOptions) -> Result<bool> {
    if rounds == 0 {
        return Err(Error::domain("round count must be at least 1"));
    }
    let board = Arc::new(Board::new(g)?);
    if g.n() == 0 {
        return Ok(true);
    }
    let mut s = Forcing { board, memo: FxHashMap::default(), budget: Budget::new(opts) };
    s.alice(0, 0, rounds as u32)
}

struct Forcing {
    board: Arc<Board>,
    memo: FxHashMap<(u64, u64), bool>,
    budget: Budget,
}

impl Forcing {
    /// Alice to move with `left` moves remaining.
    fn alice(&mut self, red: u64, blue: u64, left: u32) -> Result<bool> {
        let free = self.board.all & !(red | blue);
        if free == 0 || left == 0 {
            return Ok(false);
        }
        if let Some(&v) = self.memo.get(&(red, blue)) {
            return Ok(v);
        }
        self.budget.tick()?;
        // Try vertices touching the red set first.
        let near = self.board.neighbourhood(red) & free;
        let order = [near, free & !near];
        let mut win = false;
        'outer: for tier in order {
            let mut rest = tier;
            while rest != 0 {
                let v = rest.trailing_zeros();
                rest &= rest - 1;
                let r2 = red | (1 << v);
                if self.board.dominating_component(r2).is_some() {
                    win = true;
                    break 'outer;
                }
                if left > 1 && self.bob(r2, blue, left - 1)? {
                    win = true;
                    break 'outer;
                }
            }
        }
        self.memo.insert((red, blue), win);
        Ok(win)
    }

    fn bob(&mut self, red: u64, blue: u64, left: u32) -> Result<bool> {
        let free = self.board.all & !(red | blue);
        if free == 0 {
            return Ok(false);
        }
        let mut rest = free;
        while rest != 0 {
            let w = rest.trailing_zeros();
            rest &= rest - 1;
            if !self.alice(red, blue | (1 << w), left)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let mut k5 = Graph::new(5).unwrap();
        for u in 0..5 {
            for v in u + 1..5 {
                k5.add_edge(u, v).unwrap();
            }
        }
        assert!(can_force_cds_within(&k5, 1).unwrap());
        let p5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert!(!can_force_cds_within(&p5, 1).unwrap());
        // Every connected dominating set of P_5 contains 1, 2 and 3.
        assert!(!can_force_cds_within(&p5, 3).unwrap());
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(can_force_cds_within(&p3, 1).unwrap());
        assert!(can_force_cds_within(&k5, 0).is_err());
    }
}
