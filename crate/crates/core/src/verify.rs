//! One-sided verification: fix one player's strategy and let the other side
//! range over every legal line (or over random lines).

use rustc_hash::FxHashMap as HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use rand::seq::IteratorRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::game::{
    is_over, legal_set, notify, score, GameConfig, GameVariant, Move, Player, Position, PrivateState, Strategy,
};
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub max_states: u64,
    /// Worker threads for the opponent's first decision; 0 or 1 is sequential.
    pub threads: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { max_states: 50_000_000, threads: 1 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    /// Minimum final score over Bob's lines (fixed Alice) or maximum over
    /// Alice's lines (fixed Bob).
    pub value: usize,
    pub states: u64,
}

type Key = (u128, u128, u8, PrivateState);

struct Walker<'a> {
    g: &'a Graph,
    variant: &'a GameVariant,
    fixed: &'a dyn Strategy,
    side: Player,
    memo: HashMap<Key, usize>,
    counter: &'a AtomicU64,
    limit: u64,
}

impl<'a> Walker<'a> {
    fn children(&self, cfg: &GameConfig) -> Vec<Move> {
        let (verts, pass) = legal_set(self.g, self.variant, cfg, cfg.mover());
        let mut out: Vec<Move> = verts.iter().map(Move::Color).collect();
        if pass {
            out.push(Move::Pass);
        }
        out
    }

    fn step(&self, cfg: &GameConfig, st: &PrivateState, mover: Player, m: Move) -> (GameConfig, PrivateState) {
        let next = cfg.with_move(mover, m);
        let mut s = *st;
        let pos = Position { graph: self.g, variant: self.variant, config: &next };
        notify(self.fixed, self.side, &pos, mover, m, &mut s);
        (next, s)
    }

    fn fixed_move(&self, cfg: &GameConfig, st: &PrivateState) -> Result<Move> {
        let mover = cfg.mover();
        let pos = Position { graph: self.g, variant: self.variant, config: cfg };
        let m = self.fixed.choose(&pos, st);
        let (verts, pass) = legal_set(self.g, self.variant, cfg, mover);
        let ok = match m {
            Move::Color(v) => verts.contains(v),
            Move::Pass => pass,
        };
        if !ok {
            return Err(Error::IllegalMove {
                turn: cfg.red.len() + cfg.blue.len() + (cfg.alice_skips + cfg.bob_skips) as usize + 1,
                player: format!("{mover} ({})", self.fixed.name()),
                mv: m.to_string(),
            });
        }
        Ok(m)
    }

    fn value(&mut self, cfg: GameConfig, st: PrivateState) -> Result<usize> {
        if is_over(self.g, self.variant, &cfg) {
            return Ok(score(self.g, self.variant, cfg.red));
        }
        let key = (cfg.red.0, cfg.blue.0, cfg.alice_skips | (cfg.bob_skips << 1), st);
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        if self.counter.fetch_add(1, Ordering::Relaxed) >= self.limit {
            return Err(Error::BudgetExceeded { limit: self.limit });
        }
        let mover = cfg.mover();
        let v = if mover == self.side {
            let m = self.fixed_move(&cfg, &st)?;
            let (c, s) = self.step(&cfg, &st, mover, m);
            self.value(c, s)?
        } else {
            let mut best: Option<usize> = None;
            for m in self.children(&cfg) {
                let (c, s) = self.step(&cfg, &st, mover, m);
                let v = self.value(c, s)?;
                best = Some(match (best, self.side) {
                    (None, _) => v,
                    (Some(b), Player::Alice) => b.min(v),
                    (Some(b), Player::Bob) => b.max(v),
                });
            }
            best.expect("a live position has a legal move")
        };
        self.memo.insert(key, v);
        Ok(v)
    }
}

/// Guaranteed value of `fixed` playing `side` against every opposing line:
/// the minimum final score when Alice is fixed, the maximum when Bob is.
pub fn verify_strategy_exhaustive(
    g: &Graph,
    variant: &GameVariant,
    fixed: &dyn Strategy,
    side: Player,
    opts: VerifyOptions,
) -> Result<VerifyReport> {
    variant.validate(g)?;
    let counter = AtomicU64::new(0);
    let mk = || Walker { g, variant, fixed, side, memo: HashMap::default(), counter: &counter, limit: opts.max_states };
    let cfg = GameConfig::default();
    let st = fixed.initial_state(&Position { graph: g, variant, config: &cfg });

    // Advance along the fixed side's forced moves to the first opposing choice.
    let walker = mk();
    let (mut cfg, mut st) = (cfg, st);
    while !is_over(g, variant, &cfg) && cfg.mover() == side {
        let m = walker.fixed_move(&cfg, &st)?;
        (cfg, st) = walker.step(&cfg, &st, side, m);
    }
    if is_over(g, variant, &cfg) {
        return Ok(VerifyReport { value: score(g, variant, cfg.red), states: 0 });
    }
    let branches: Vec<(GameConfig, PrivateState)> =
        walker.children(&cfg).into_iter().map(|m| walker.step(&cfg, &st, side.other(), m)).collect();
    drop(walker);

    let eval = |(c, s): &(GameConfig, PrivateState)| mk().value(*c, *s);
    let values: Vec<Result<usize>> = if opts.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| Error::domain(e.to_string()))?;
        pool.install(|| branches.par_iter().map(eval).collect())
    } else {
        branches.iter().map(eval).collect()
    };
    let mut best: Option<usize> = None;
    for v in values {
        let v = v?;
        best = Some(match (best, side) {
            (None, _) => v,
            (Some(b), Player::Alice) => b.min(v),
            (Some(b), Player::Bob) => b.max(v),
        });
    }
    Ok(VerifyReport { value: best.unwrap_or(0), states: counter.load(Ordering::Relaxed) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlayoutSummary {
    pub plays: usize,
    pub min: usize,
    pub max: usize,
    /// Final red set of a play reaching the extreme unfavourable to the fixed
    /// side (max for fixed Bob, min for fixed Alice).
    pub witness: VertexSet,
}

/// Plays `fixed` against an opponent choosing uniformly among legal moves.
pub fn random_playouts(
    g: &Graph,
    variant: &GameVariant,
    fixed: &dyn Strategy,
    side: Player,
    plays: usize,
    seed: u64,
) -> Result<PlayoutSummary> {
    variant.validate(g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let counter = AtomicU64::new(0);
    let walker = Walker { g, variant, fixed, side, memo: HashMap::default(), counter: &counter, limit: u64::MAX };
    let mut summary = PlayoutSummary { plays, min: usize::MAX, max: 0, witness: VertexSet::EMPTY };
    for _ in 0..plays {
        let mut cfg = GameConfig::default();
        let mut st = fixed.initial_state(&Position { graph: g, variant, config: &cfg });
        while !is_over(g, variant, &cfg) {
            let mover = cfg.mover();
            let m = if mover == side {
                walker.fixed_move(&cfg, &st)?
            } else {
                let (verts, pass) = legal_set(g, variant, &cfg, mover);
                let count = verts.len() + pass as usize;
                let i = (0..count).choose(&mut rng).expect("live position");
                verts.iter().nth(i).map_or(Move::Pass, Move::Color)
            };
            (cfg, st) = walker.step(&cfg, &st, mover, m);
        }
        let s = score(g, variant, cfg.red);
        let worse = match side {
            Player::Alice => s < summary.min,
            Player::Bob => s > summary.max || summary.witness.is_empty(),
        };
        if worse {
            summary.witness = cfg.red;
        }
        summary.min = summary.min.min(s);
        summary.max = summary.max.max(s);
    }
    if plays == 0 {
        summary.min = 0;
    }
    Ok(summary)
}
