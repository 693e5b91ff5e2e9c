//! Exact game values by memoized minimax over packed 64-bit positions.

mod board;
pub mod cds;
pub mod head;
mod search;

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::game::{GameConfig, GameVariant, Move, Player, Position, PrivateState, Strategy};
use crate::graph::{components, induced, Graph, Induced, VertexSet};

pub use board::SOLVER_CAPACITY;
use board::{Board, Rules};
pub use cds::{can_force_cds_within, can_force_cds_within_opts};
pub use head::{analyze_head, HeadAnalysis};
use search::{Search, State};

pub const DEFAULT_MAX_STATES: u64 = 500_000_000;

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    pub max_states: u64,
    pub time_limit: Option<Duration>,
    /// Worker threads for root moves; 0 and 1 both mean sequential.
    pub threads: usize,
    /// Alpha-beta cut-offs and bound-based early exits.
    pub pruning: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { max_states: DEFAULT_MAX_STATES, time_limit: None, threads: 1, pruning: true }
    }
}

/// Shared expansion counter and deadline for one logical solve.
#[derive(Clone, Debug)]
pub(crate) struct Budget {
    used: Arc<AtomicU64>,
    limit: u64,
    deadline: Option<Instant>,
}

impl Budget {
    pub(crate) fn new(opts: &SolveOptions) -> Self {
        Budget {
            used: Arc::new(AtomicU64::new(0)),
            limit: opts.max_states,
            deadline: opts.time_limit.map(|d| Instant::now() + d),
        }
    }

    #[inline]
    pub(crate) fn tick(&self) -> Result<()> {
        let used = self.used.fetch_add(1, Ordering::Relaxed);
        if used >= self.limit {
            return Err(Error::BudgetExceeded { limit: self.limit });
        }
        if used & 0x3ff == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    return Err(Error::Deadline { expanded: used });
                }
            }
        }
        Ok(())
    }

    pub(crate) fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub value: usize,
    /// A line of optimal play from the empty position to the end of the game.
    pub principal_variation: Vec<Move>,
    pub states_expanded: u64,
}

/// Game value with default options.
pub fn cg(g: &Graph, variant: &GameVariant) -> Result<SolveResult> {
    cg_with(g, variant, &SolveOptions::default())
}

/// Game value under optimal play. The plain variant is solved per connected
/// component; other variants on the whole graph.
pub fn cg_with(g: &Graph, variant: &GameVariant, opts: &SolveOptions) -> Result<SolveResult> {
    variant.validate(g)?;
    let budget = Budget::new(opts);
    if matches!(variant, GameVariant::Plain) {
        let comps = components(g);
        if comps.len() > 1 {
            return solve_componentwise(g, &comps, opts, &budget);
        }
    }
    let local = LocalGraph::whole(g)?;
    let rules = Rules::from_variant(variant, &local.sub)?;
    let (value, pv) = solve_root(&local.board, rules, State::initial(), opts, &budget)?;
    Ok(SolveResult {
        value: value as usize,
        principal_variation: pv.into_iter().map(|m| local.lift_move(m)).collect(),
        states_expanded: budget.used(),
    })
}

pub fn is_a_perfect(g: &Graph) -> Result<bool> {
    Ok(cg(g, &GameVariant::Plain)?.value == g.n().div_ceil(2))
}

/// Value of an arbitrary position with an explicit player to move. Counts
/// need not alternate, which is what sub-games with extra moves require.
pub fn position_value(
    g: &Graph,
    variant: &GameVariant,
    cfg: &GameConfig,
    mover: Player,
    opts: &SolveOptions,
) -> Result<usize> {
    let s = PositionSolver::new(g, variant, opts)?;
    s.value(cfg, mover)
}

/// Solves the root by searching every root move independently and in a
/// fixed order, so the outcome does not depend on the thread count.
fn solve_root(
    board: &Arc<Board>,
    rules: Rules,
    root: State,
    opts: &SolveOptions,
    budget: &Budget,
) -> Result<(u8, Vec<Move>)> {
    let mk = || Search::new(board.clone(), rules, budget.clone(), opts.pruning);
    let probe = mk();
    if probe.is_terminal(&root) {
        return Ok((probe.static_score(&root), Vec::new()));
    }
    let moves = probe.ordered_moves(&root);
    drop(probe);
    let run = |m: &Move| -> Result<(u8, Search)> {
        let mut s = mk();
        let child = s.child(&root, *m);
        let v = s.exact(&child)?;
        Ok((v, s))
    };
    let results: Vec<Result<(u8, Search)>> = if opts.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| Error::domain(e.to_string()))?;
        pool.install(|| moves.par_iter().map(run).collect())
    } else {
        moves.iter().map(run).collect()
    };
    let mut best: Option<(u8, usize)> = None;
    let mut searches = Vec::with_capacity(results.len());
    for (i, r) in results.into_iter().enumerate() {
        let (v, s) = r?;
        let better = match best {
            None => true,
            Some((b, _)) => {
                if root.alice_to_move {
                    v > b
                } else {
                    v < b
                }
            }
        };
        if better {
            best = Some((v, i));
        }
        searches.push(s);
    }
    let (value, idx) = best.expect("nonterminal root has moves");
    let mut s = searches.swap_remove(idx);
    let first = moves[idx];
    let mut pv = vec![first];
    pv.extend(s.principal_variation(s.child(&root, first))?);
    Ok((value, pv))
}

/// A graph re-indexed into the solver's 64-bit representation together with
/// its map back to the caller's vertex numbering.
struct LocalGraph {
    sub: Graph,
    to_parent: Vec<usize>,
    board: Arc<Board>,
}

impl LocalGraph {
    fn whole(g: &Graph) -> Result<Self> {
        Self::new(Induced { graph: g.clone(), to_parent: (0..g.n()).collect() })
    }

    fn new(ind: Induced) -> Result<Self> {
        let board = Arc::new(Board::new(&ind.graph)?);
        Ok(LocalGraph { sub: ind.graph, to_parent: ind.to_parent, board })
    }

    fn project(&self, s: VertexSet) -> u64 {
        let mut out = 0u64;
        for (i, &p) in self.to_parent.iter().enumerate() {
            if s.contains(p) {
                out |= 1 << i;
            }
        }
        out
    }

    fn lift_move(&self, m: Move) -> Move {
        match m {
            Move::Color(v) => Move::Color(self.to_parent[v]),
            Move::Pass => Move::Pass,
        }
    }
}

/// Memo-backed exact solver for arbitrary positions of one graph and
/// variant. Interior mutability lets strategies share it across calls.
pub struct PositionSolver {
    local: LocalGraph,
    search: Mutex<Search>,
    budget: Budget,
}

impl PositionSolver {
    pub fn new(g: &Graph, variant: &GameVariant, opts: &SolveOptions) -> Result<Self> {
        variant.validate(g)?;
        Self::for_subgraph(g, VertexSet::full(g.n()), variant, opts)
    }

    /// Solver for the sub-game on `G[within]`; positions are given in the
    /// parent's numbering and projected.
    pub fn for_subgraph(g: &Graph, within: VertexSet, variant: &GameVariant, opts: &SolveOptions) -> Result<Self> {
        let local = LocalGraph::new(induced(g, within)?)?;
        let lv = match variant {
            GameVariant::TargetSet(x) => GameVariant::TargetSet(project_set(&local, *x)),
            GameVariant::SkipBudget { alice, bob, target } => {
                GameVariant::SkipBudget { alice: *alice, bob: *bob, target: target.map(|x| project_set(&local, x)) }
            }
            v => v.clone(),
        };
        let rules = Rules::from_variant(&lv, &local.sub)?;
        let budget = Budget::new(opts);
        let search = Search::new(local.board.clone(), rules, budget.clone(), opts.pruning);
        Ok(PositionSolver { local, search: Mutex::new(search), budget })
    }

    fn state(&self, cfg: &GameConfig, mover: Player) -> State {
        State {
            red: self.local.project(cfg.red),
            blue: self.local.project(cfg.blue),
            a_skips: cfg.alice_skips,
            b_skips: cfg.bob_skips,
            alice_to_move: mover == Player::Alice,
        }
    }

    pub fn value(&self, cfg: &GameConfig, mover: Player) -> Result<usize> {
        let st = self.state(cfg, mover);
        let mut s = self.search.lock().expect("solver poisoned");
        Ok(s.exact(&st)? as usize)
    }

    /// First optimal move in search order, in the parent's numbering.
    /// `None` when the local position is over.
    pub fn best_move(&self, cfg: &GameConfig, mover: Player) -> Result<Option<Move>> {
        let st = self.state(cfg, mover);
        let mut s = self.search.lock().expect("solver poisoned");
        Ok(s.best_move(&st)?.map(|m| self.local.lift_move(m)))
    }

    /// True when the sub-game still has a legal move for `mover`.
    pub fn is_live(&self, cfg: &GameConfig, mover: Player) -> bool {
        let st = self.state(cfg, mover);
        let s = self.search.lock().expect("solver poisoned");
        !s.is_terminal(&st)
    }

    pub fn vertices(&self) -> VertexSet {
        self.local.to_parent.iter().copied().collect()
    }

    pub fn states_expanded(&self) -> u64 {
        self.budget.used()
    }
}

fn project_set(local: &LocalGraph, s: VertexSet) -> VertexSet {
    VertexSet(local.project(s) as u128)
}

/// Optimal strategy for one side, backed by the memo table. For the plain
/// variant on a disconnected graph it plays component by component.
pub fn optimal_strategy(
    g: &Graph,
    variant: &GameVariant,
    side: Player,
    opts: &SolveOptions,
) -> Result<Box<dyn Strategy>> {
    variant.validate(g)?;
    if matches!(variant, GameVariant::Plain) {
        let comps = components(g);
        if comps.len() > 1 {
            return Ok(Box::new(Componentwise::new(g, &comps, side, opts)?));
        }
    }
    Ok(Box::new(Optimal { solver: PositionSolver::new(g, variant, opts)?, side }))
}

struct Optimal {
    solver: PositionSolver,
    side: Player,
}

impl Strategy for Optimal {
    fn name(&self) -> String {
        format!("optimal-{}", self.side.to_string().to_lowercase())
    }

    fn choose(&self, pos: &Position, _state: &PrivateState) -> Move {
        match self.solver.best_move(pos.config, pos.mover()) {
            Ok(Some(m)) => m,
            _ => pos.fallback(),
        }
    }
}

/// Plays each component as an independent sub-game: answer in the component
/// the opponent just played in, otherwise (for Alice) in the component with
/// the best value.
struct Componentwise {
    side: Player,
    parts: Vec<PositionSolver>,
    focus: usize,
}

impl Componentwise {
    fn new(g: &Graph, comps: &[VertexSet], side: Player, opts: &SolveOptions) -> Result<Self> {
        let mut parts = Vec::with_capacity(comps.len());
        let mut focus = (0, 0);
        for (i, &c) in comps.iter().enumerate() {
            let p = PositionSolver::for_subgraph(g, c, &GameVariant::Plain, opts)?;
            let v = p.value(&GameConfig::default(), Player::Alice)?;
            if v > focus.1 {
                focus = (i, v);
            }
            parts.push(p);
        }
        Ok(Componentwise { side, parts, focus: focus.0 })
    }

    fn play_in(&self, i: usize, pos: &Position) -> Option<Move> {
        let p = &self.parts[i];
        if (p.vertices() & pos.uncoloured()).is_empty() {
            return None;
        }
        p.best_move(pos.config, self.side).ok().flatten()
    }
}

impl Strategy for Componentwise {
    fn name(&self) -> String {
        format!("optimal-{}", self.side.to_string().to_lowercase())
    }

    fn choose(&self, pos: &Position, state: &PrivateState) -> Move {
        if let Some(Move::Color(v)) = state.last_opponent {
            if let Some(i) = self.parts.iter().position(|p| p.vertices().contains(v)) {
                if let Some(m) = self.play_in(i, pos) {
                    return m;
                }
            }
        }
        if self.side == Player::Alice {
            if let Some(m) = self.play_in(self.focus, pos) {
                return m;
            }
        }
        (0..self.parts.len()).find_map(|i| self.play_in(i, pos)).unwrap_or_else(|| pos.fallback())
    }
}

fn solve_componentwise(g: &Graph, comps: &[VertexSet], opts: &SolveOptions, budget: &Budget) -> Result<SolveResult> {
    let mut value = 0;
    for &c in comps {
        let local = LocalGraph::new(induced(g, c)?)?;
        let rules = Rules::from_variant(&GameVariant::Plain, &local.sub)?;
        let (v, _) = solve_root(&local.board, rules, State::initial(), opts, budget)?;
        value = value.max(v as usize);
    }
    let alice = Componentwise::new(g, comps, Player::Alice, opts)?;
    let bob = Componentwise::new(g, comps, Player::Bob, opts)?;
    let trace = crate::game::play_match(g, &GameVariant::Plain, &alice, &bob)?;
    debug_assert_eq!(trace.score, value);
    Ok(SolveResult {
        value,
        principal_variation: trace.moves.into_iter().map(|(_, m)| m).collect(),
        states_expanded: budget.used(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{play_match, replay, score};

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n).unwrap();
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    fn disjoint(parts: &[Graph]) -> Graph {
        let n = parts.iter().map(|p| p.n()).sum();
        let mut g = Graph::new(n).unwrap();
        let mut off = 0;
        for p in parts {
            for (u, v) in p.edges() {
                g.add_edge(u + off, v + off).unwrap();
            }
            off += p.n();
        }
        g
    }

    fn king(m: usize) -> Graph {
        let mut g = Graph::new(2 * m).unwrap();
        for c in 0..m {
            g.add_edge(c, m + c).unwrap();
            if c + 1 < m {
                for (a, b) in [(c, c + 1), (m + c, m + c + 1), (c, m + c + 1), (m + c, c + 1)] {
                    g.add_edge(a, b).unwrap();
                }
            }
        }
        g
    }

    #[test]
    fn small_values() {
        assert_eq!(cg(&cycle(5), &GameVariant::Plain).unwrap().value, 2);
        assert_eq!(cg(&complete(5), &GameVariant::Plain).unwrap().value, 3);
        let k5s = disjoint(&[complete(5), complete(5), complete(5)]);
        assert_eq!(cg(&k5s, &GameVariant::Plain).unwrap().value, 3);
        assert_eq!(cg(&king(4), &GameVariant::Plain).unwrap().value, 4);
        assert!(cg(&king(6), &GameVariant::Connected).unwrap().value <= 6);
    }

    #[test]
    fn a_perfect_examples() {
        // Star with four leaves, one edge subdivided.
        let star = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (4, 5)]).unwrap();
        assert!(is_a_perfect(&star).unwrap());
        let two_triangles = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]).unwrap();
        assert!(!is_a_perfect(&two_triangles).unwrap());
        let k3_plus = disjoint(&[complete(3), Graph::new(1).unwrap()]);
        assert!(is_a_perfect(&k3_plus).unwrap());
    }

    #[test]
    fn principal_variation_replays_to_value() {
        let graphs = [cycle(6), king(3), disjoint(&[complete(4), cycle(5)])];
        for g in &graphs {
            for variant in [GameVariant::Plain, GameVariant::Connected] {
                let r = cg(g, &variant).unwrap();
                let mut cfg = GameConfig::default();
                let mut moves = Vec::new();
                for &m in &r.principal_variation {
                    moves.push((cfg.mover(), m));
                    cfg = cfg.with_move(cfg.mover(), m);
                }
                let end = replay(g, &variant, &moves).unwrap();
                assert!(crate::game::is_over(g, &variant, &end));
                assert_eq!(score(g, &variant, end.red), r.value, "{g:?} {variant:?}");
            }
        }
    }

    #[test]
    fn pruning_and_threads_do_not_change_values() {
        let g = Graph::from_edges(8, &[(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5), (5, 6), (6, 7), (7, 4), (1, 6)])
            .unwrap();
        let x: VertexSet = [0, 5].into_iter().collect();
        for v in [
            GameVariant::Plain,
            GameVariant::Connected,
            GameVariant::TargetSet(x),
            GameVariant::SkipBudget { alice: 1, bob: 1, target: Some(x) },
            GameVariant::SkipBudget { alice: 1, bob: 0, target: None },
        ] {
            let a = cg(&g, &v).unwrap().value;
            let b = cg_with(&g, &v, &SolveOptions { pruning: false, ..Default::default() }).unwrap().value;
            let c = cg_with(&g, &v, &SolveOptions { threads: 3, ..Default::default() }).unwrap();
            let c1 = cg_with(&g, &v, &SolveOptions { threads: 1, ..Default::default() }).unwrap();
            assert_eq!(a, b, "{v:?}");
            assert_eq!(a, c.value);
            assert_eq!(c, c1);
        }
    }

    #[test]
    fn optimal_strategies_meet_at_value() {
        let g = disjoint(&[cycle(5), complete(4), king(2)]);
        let opts = SolveOptions::default();
        let a = optimal_strategy(&g, &GameVariant::Plain, Player::Alice, &opts).unwrap();
        let b = optimal_strategy(&g, &GameVariant::Plain, Player::Bob, &opts).unwrap();
        let t = play_match(&g, &GameVariant::Plain, a.as_ref(), b.as_ref()).unwrap();
        assert_eq!(t.score, cg(&g, &GameVariant::Plain).unwrap().value);
    }

    #[test]
    fn budget_and_capacity_errors() {
        let err = cg_with(&cycle(12), &GameVariant::Plain, &SolveOptions { max_states: 10, ..Default::default() })
            .unwrap_err();
        assert!(err.is_budget());
        let big = cycle(70);
        assert!(matches!(cg(&big, &GameVariant::Plain).unwrap_err(), Error::Capacity { .. }));
    }
}
