//! Positive CNF instances and the game where Alice sets variables true and
//! Bob sets them false.

use std::fmt;
use std::sync::Mutex;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::game::Player;

pub const MAX_CNF_VARS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfInstance {
    pub vars: usize,
    /// Zero-based variable indices per clause.
    pub clauses: Vec<Vec<usize>>,
}

impl CnfInstance {
    pub fn new(vars: usize, clauses: Vec<Vec<usize>>) -> Result<Self> {
        if vars == 0 {
            return Err(Error::domain("a CNF instance needs at least one variable"));
        }
        for (j, c) in clauses.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::domain(format!("clause {} is empty", j + 1)));
            }
            if let Some(&x) = c.iter().find(|&&x| x >= vars) {
                return Err(Error::domain(format!("clause {} uses variable {} of {vars}", j + 1, x + 1)));
            }
        }
        let clauses = clauses
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c.dedup();
                c
            })
            .collect();
        Ok(CnfInstance { vars, clauses })
    }

    /// Appends a dummy variable when the count is odd.
    pub fn padded(&self) -> CnfInstance {
        let vars = self.vars + self.vars % 2;
        CnfInstance { vars, clauses: self.clauses.clone() }
    }

    pub fn satisfied_by(&self, trues: u32) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|&x| trues >> x & 1 == 1))
    }
}

impl fmt::Display for CnfInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p poscnf {} {}", self.vars, self.clauses.len())?;
        for c in &self.clauses {
            for x in c {
                write!(f, "{} ", x + 1)?;
            }
            writeln!(f, "0")?;
        }
        Ok(())
    }
}

/// Parses `p poscnf <vars> <clauses>` followed by one clause per line of
/// 1-indexed variables ending in `0`. Lines starting with `c` or `#` are
/// comments.
pub fn parse_cnf(text: &str) -> Result<CnfInstance> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut clauses = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks[0] == "p" {
            if header.is_some() {
                return Err(Error::parse(line_no, "duplicate header"));
            }
            if toks.len() != 4 || toks[1] != "poscnf" {
                return Err(Error::parse(line_no, "expected `p poscnf <vars> <clauses>`"));
            }
            let num = |s: &str| s.parse::<usize>().map_err(|_| Error::parse(line_no, format!("bad count `{s}`")));
            header = Some((num(toks[2])?, num(toks[3])?, line_no));
            continue;
        }
        let Some((vars, _, _)) = header else {
            return Err(Error::parse(line_no, "clause before the header"));
        };
        let mut clause = Vec::new();
        let mut closed = false;
        for t in toks {
            if closed {
                return Err(Error::parse(line_no, "tokens after the terminating 0"));
            }
            let x: usize =
                t.parse().map_err(|_| Error::parse(line_no, format!("expected a positive variable, found `{t}`")))?;
            match x {
                0 => closed = true,
                x if x > vars => return Err(Error::parse(line_no, format!("variable {x} exceeds {vars}"))),
                x => clause.push(x - 1),
            }
        }
        if !closed {
            return Err(Error::parse(line_no, "clause must end with 0"));
        }
        if clause.is_empty() {
            return Err(Error::parse(line_no, "empty clause"));
        }
        clauses.push(clause);
    }
    let (vars, m, line) = header.ok_or_else(|| Error::parse(0, "missing `p poscnf` header"))?;
    if clauses.len() != m {
        return Err(Error::parse(line, format!("header announces {m} clauses, found {}", clauses.len())));
    }
    CnfInstance::new(vars, clauses).map_err(|e| Error::parse(line, e.to_string()))
}

type Key = (u32, u32, bool);

/// Memoized minimax for the CNF game from any position and either mover.
pub struct CnfSolver {
    cnf: CnfInstance,
    masks: Vec<u32>,
    memo: Mutex<FxHashMap<Key, bool>>,
}

impl CnfSolver {
    pub fn new(cnf: &CnfInstance) -> Result<Self> {
        if cnf.vars > MAX_CNF_VARS {
            return Err(Error::Capacity { n: cnf.vars, limit: MAX_CNF_VARS });
        }
        let masks = cnf.clauses.iter().map(|c| c.iter().fold(0u32, |m, &x| m | 1 << x)).collect();
        Ok(CnfSolver { cnf: cnf.clone(), masks, memo: Mutex::new(FxHashMap::default()) })
    }

    pub fn vars(&self) -> usize {
        self.cnf.vars
    }

    fn all(&self) -> u32 {
        ((1u64 << self.cnf.vars) - 1) as u32
    }

    fn wins(&self, memo: &mut FxHashMap<Key, bool>, t: u32, f: u32, alice: bool) -> bool {
        if self.masks.iter().all(|&c| c & t != 0) {
            return true;
        }
        if self.masks.iter().any(|&c| c & !f == 0) {
            return false;
        }
        let free = self.all() & !(t | f);
        if free == 0 {
            return false;
        }
        if let Some(&w) = memo.get(&(t, f, alice)) {
            return w;
        }
        let mut rest = free;
        let mut result = !alice;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            rest &= rest - 1;
            let w = if alice { self.wins(memo, t | bit, f, false) } else { self.wins(memo, t, f | bit, true) };
            if w == alice {
                result = alice;
                break;
            }
        }
        memo.insert((t, f, alice), result);
        result
    }

    /// Whether Alice wins with `t` set true, `f` set false and `mover` next.
    pub fn alice_wins(&self, t: u32, f: u32, mover: Player) -> bool {
        let mut memo = self.memo.lock().expect("memo poisoned");
        self.wins(&mut memo, t, f, mover == Player::Alice)
    }

    /// The lowest free variable keeping `mover` winning, or the lowest free
    /// variable if `mover` is losing.
    pub fn best_move(&self, t: u32, f: u32, mover: Player) -> Option<usize> {
        let free = self.all() & !(t | f);
        if free == 0 {
            return None;
        }
        let mut memo = self.memo.lock().expect("memo poisoned");
        let alice = mover == Player::Alice;
        let winning = (0..self.cnf.vars).filter(|&x| free >> x & 1 == 1).find(|&x| {
            let bit = 1 << x;
            let w =
                if alice { self.wins(&mut memo, t | bit, f, false) } else { self.wins(&mut memo, t, f | bit, true) };
            w == alice
        });
        winning.or(Some(free.trailing_zeros() as usize))
    }
}

/// Winner of the CNF game with Alice moving first.
pub fn solve_poscnf(cnf: &CnfInstance) -> Result<Player> {
    let s = CnfSolver::new(cnf)?;
    Ok(if s.alice_wins(0, 0, Player::Alice) { Player::Alice } else { Player::Bob })
}
