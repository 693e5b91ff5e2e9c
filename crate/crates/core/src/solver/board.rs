use crate::error::{Error, Result};
use crate::game::GameVariant;
use crate::graph::Graph;

/// Largest graph the exact solver accepts: a position must fit two words.
pub const SOLVER_CAPACITY: usize = 64;

/// Adjacency packed into `u64` words.
#[derive(Clone, Debug)]
pub(crate) struct Board {
    pub all: u64,
    pub adj: Vec<u64>,
}

impl Board {
    pub fn new(g: &Graph) -> Result<Self> {
        let n = g.n();
        if n > SOLVER_CAPACITY {
            return Err(Error::Capacity { n, limit: SOLVER_CAPACITY });
        }
        let adj = (0..n).map(|v| g.neighbors(v).as_u64()).collect();
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Ok(Board { all, adj })
    }

    #[inline]
    pub fn neighbourhood(&self, s: u64) -> u64 {
        let mut out = 0;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out |= self.adj[v];
        }
        out & !s
    }

    /// Component of `G[within]` containing the lowest vertex of `seed`.
    #[inline]
    pub fn component(&self, within: u64, seed: u64) -> u64 {
        let mut comp = seed & within;
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                next |= self.adj[v];
            }
            next &= within & !comp;
            comp |= next;
            frontier = next;
        }
        comp
    }

    /// Largest component of `G[s]` (lowest vertex wins ties) and its order.
    pub fn largest(&self, s: u64) -> (u64, u32) {
        let mut rest = s;
        let mut best = (0u64, 0u32);
        while rest != 0 {
            let c = self.component(s, rest & rest.wrapping_neg());
            let k = c.count_ones();
            if k > best.1 {
                best = (c, k);
            }
            rest &= !c;
        }
        best
    }

    /// Total size of the components of `G[s]` meeting `x`.
    pub fn target_total(&self, s: u64, x: u64) -> u32 {
        let mut rest = s & x;
        let mut total = 0;
        while rest != 0 {
            let c = self.component(s, rest & rest.wrapping_neg());
            total += c.count_ones();
            rest &= !c;
        }
        total
    }

    /// Some component of `G[s]` dominates the graph.
    pub fn dominating_component(&self, s: u64) -> Option<u64> {
        let mut rest = s;
        while rest != 0 {
            let c = self.component(s, rest & rest.wrapping_neg());
            if (c | self.neighbourhood(c)) == self.all {
                return Some(c);
            }
            rest &= !c;
        }
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Scoring {
    Largest,
    Target(u64),
}

/// Variant rules in packed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Rules {
    pub scoring: Scoring,
    pub connected: bool,
    pub alice_skips: u8,
    pub bob_skips: u8,
}

impl Rules {
    pub fn from_variant(v: &GameVariant, g: &Graph) -> Result<Self> {
        if g.n() > SOLVER_CAPACITY {
            return Err(Error::Capacity { n: g.n(), limit: SOLVER_CAPACITY });
        }
        let scoring = match v.target() {
            Some(x) => Scoring::Target(x.as_u64()),
            None => Scoring::Largest,
        };
        Ok(Rules {
            scoring,
            connected: matches!(v, GameVariant::Connected),
            alice_skips: v.skip_budget(crate::game::Player::Alice),
            bob_skips: v.skip_budget(crate::game::Player::Bob),
        })
    }

    pub fn has_skips(&self) -> bool {
        self.alice_skips + self.bob_skips > 0
    }
}
