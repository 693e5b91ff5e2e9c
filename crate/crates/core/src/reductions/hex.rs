//! Generalised Hex on a graph with two pre-coloured red terminals.

use std::sync::Mutex;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::game::Player;
use crate::graph::{parse_graph, write_graph, Graph, VertexSet};
use crate::planarity::{planarity_check, Planarity};

pub const MAX_HEX_VERTICES: usize = 18;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HexInstance {
    pub h: Graph,
    pub s: usize,
    pub t: usize,
}

impl HexInstance {
    /// Checks that `{s, t}` is an outside pair of `h`.
    pub fn new(h: Graph, s: usize, t: usize) -> Result<Self> {
        if s >= h.n() || t >= h.n() || s == t {
            return Err(Error::domain(format!("terminals {s} and {t} must be distinct vertices of h")));
        }
        if h.has_edge(s, t) {
            return Err(Error::domain("s and t must not be adjacent"));
        }
        let mut plus = h.clone();
        plus.add_edge(s, t)?;
        if planarity_check(&plus) == Planarity::NonPlanar {
            return Err(Error::domain("h + st is not planar, so {s, t} is not an outside pair"));
        }
        Ok(HexInstance { h, s, t })
    }

    /// Adds a leaf on `s` when the order is odd.
    pub fn padded(&self) -> Result<HexInstance> {
        if self.h.n().is_multiple_of(2) {
            return Ok(self.clone());
        }
        let n = self.h.n();
        let mut h = Graph::new(n + 1)?;
        for (u, v) in self.h.edges() {
            h.add_edge(u, v)?;
        }
        h.add_edge(self.s, n)?;
        Ok(HexInstance { h, s: self.s, t: self.t })
    }

    pub fn to_text(&self) -> String {
        format!("{}s {}\nt {}\n", write_graph(&self.h), self.s, self.t)
    }
}

/// The graph format plus `s <v>` and `t <v>` lines.
pub fn parse_hex(text: &str) -> Result<HexInstance> {
    let mut rest = String::new();
    let (mut s, mut t) = (None, None);
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        let mut toks = line.split_whitespace();
        let slot = match toks.next() {
            Some("s") => &mut s,
            Some("t") => &mut t,
            _ => {
                rest.push_str(raw);
                rest.push('\n');
                continue;
            }
        };
        let v = toks
            .next()
            .and_then(|x| x.parse::<usize>().ok())
            .filter(|_| toks.next().is_none())
            .ok_or_else(|| Error::parse(i + 1, "expected `s <v>` or `t <v>`"))?;
        if slot.replace((v, i + 1)).is_some() {
            return Err(Error::parse(i + 1, "terminal given twice"));
        }
        rest.push('\n');
    }
    let h = parse_graph(&rest)?;
    let (s, line) = s.ok_or_else(|| Error::parse(0, "missing `s` line"))?;
    let (t, _) = t.ok_or_else(|| Error::parse(0, "missing `t` line"))?;
    HexInstance::new(h, s, t).map_err(|e| Error::parse(line, e.to_string()))
}

type Key = (u32, u32, bool);

/// Memoized minimax on the non-terminal vertices, from any position and
/// either mover.
pub struct HexSolver {
    hex: HexInstance,
    /// Non-terminal vertices; bit `i` of a local mask is `cells[i]`.
    cells: Vec<usize>,
    memo: Mutex<FxHashMap<Key, bool>>,
}

impl HexSolver {
    pub fn new(hex: &HexInstance) -> Result<Self> {
        if hex.h.n() > MAX_HEX_VERTICES {
            return Err(Error::Capacity { n: hex.h.n(), limit: MAX_HEX_VERTICES });
        }
        let cells = (0..hex.h.n()).filter(|&v| v != hex.s && v != hex.t).collect();
        Ok(HexSolver { hex: hex.clone(), cells, memo: Mutex::new(FxHashMap::default()) })
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    /// Local mask of the cells in `set`.
    pub fn local(&self, set: VertexSet) -> u32 {
        self.cells.iter().enumerate().filter(|(_, &v)| set.contains(v)).fold(0, |m, (i, _)| m | 1 << i)
    }

    fn global(&self, mask: u32) -> VertexSet {
        self.cells.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect()
    }

    fn joined(&self, mask: u32) -> bool {
        let within = self.global(mask) | VertexSet::singleton(self.hex.s) | VertexSet::singleton(self.hex.t);
        self.hex.h.component_within(within, self.hex.s).contains(self.hex.t)
    }

    fn wins(&self, memo: &mut FxHashMap<Key, bool>, red: u32, blue: u32, alice: bool) -> bool {
        let all = ((1u64 << self.cells.len()) - 1) as u32;
        if self.joined(red) {
            return true;
        }
        if !self.joined(all & !blue) {
            return false;
        }
        if let Some(&w) = memo.get(&(red, blue, alice)) {
            return w;
        }
        let mut rest = all & !(red | blue);
        let mut result = !alice;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            rest &= rest - 1;
            let w =
                if alice { self.wins(memo, red | bit, blue, false) } else { self.wins(memo, red, blue | bit, true) };
            if w == alice {
                result = alice;
                break;
            }
        }
        memo.insert((red, blue, alice), result);
        result
    }

    pub fn alice_wins(&self, red: VertexSet, blue: VertexSet, mover: Player) -> bool {
        let mut memo = self.memo.lock().expect("memo poisoned");
        self.wins(&mut memo, self.local(red), self.local(blue), mover == Player::Alice)
    }

    /// The lowest free cell keeping `mover` winning, else the lowest free cell.
    pub fn best_move(&self, red: VertexSet, blue: VertexSet, mover: Player) -> Option<usize> {
        let (r, b) = (self.local(red), self.local(blue));
        let free: Vec<usize> = (0..self.cells.len()).filter(|i| (r | b) >> i & 1 == 0).collect();
        let first = *free.first()?;
        let mut memo = self.memo.lock().expect("memo poisoned");
        let alice = mover == Player::Alice;
        let winning = free.into_iter().find(|&i| {
            let bit = 1 << i;
            let w =
                if alice { self.wins(&mut memo, r | bit, b, false) } else { self.wins(&mut memo, r, b | bit, true) };
            w == alice
        });
        Some(self.cells[winning.unwrap_or(first)])
    }
}

pub fn solve_hex(hex: &HexInstance) -> Result<Player> {
    let s = HexSolver::new(hex)?;
    Ok(if s.alice_wins(VertexSet::EMPTY, VertexSet::EMPTY, Player::Alice) { Player::Alice } else { Player::Bob })
}
