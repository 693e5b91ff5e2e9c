//! Positions, move legality, scoring and deterministic match execution.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    Alice,
    Bob,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::Alice => Player::Bob,
            Player::Bob => Player::Alice,
        }
    }

    pub fn tag(self) -> char {
        match self {
            Player::Alice => 'A',
            Player::Bob => 'B',
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Player::Alice => f.write_str("Alice"),
            Player::Bob => f.write_str("Bob"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    Color(usize),
    Pass,
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Color(v) => write!(f, "v{v}"),
            Move::Pass => f.write_str("pass"),
        }
    }
}

impl FromStr for Move {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s == "pass" {
            return Ok(Move::Pass);
        }
        let digits = s.strip_prefix('v').unwrap_or(s);
        digits.parse().map(Move::Color).map_err(|_| format!("bad move `{s}`"))
    }
}

/// Rule set of a game. Every variant is played on the whole graph with Alice
/// moving first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GameVariant {
    Plain,
    /// Score counts every red vertex in a red component meeting the set.
    TargetSet(VertexSet),
    /// Alice must colour a neighbour of the red set once it is nonempty; the
    /// game ends when she cannot.
    Connected,
    /// Each player may pass at most `alice` / `bob` times (0 or 1). Scoring is
    /// by target set when one is given, otherwise plain.
    SkipBudget {
        alice: u8,
        bob: u8,
        target: Option<VertexSet>,
    },
}

impl GameVariant {
    pub fn skip_budget(&self, p: Player) -> u8 {
        match (self, p) {
            (GameVariant::SkipBudget { alice, .. }, Player::Alice) => *alice,
            (GameVariant::SkipBudget { bob, .. }, Player::Bob) => *bob,
            _ => 0,
        }
    }

    pub fn target(&self) -> Option<VertexSet> {
        match self {
            GameVariant::TargetSet(x) => Some(*x),
            GameVariant::SkipBudget { target, .. } => *target,
            _ => None,
        }
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        if let Some(x) = self.target() {
            if !x.is_subset(g.vertices()) {
                return Err(Error::domain("target set contains vertices outside the graph"));
            }
        }
        if let GameVariant::SkipBudget { alice, bob, .. } = self {
            if *alice > 1 || *bob > 1 {
                return Err(Error::domain("skip budgets must be 0 or 1"));
            }
        }
        Ok(())
    }
}

/// A game position. The player to move is derived from the counts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct GameConfig {
    pub red: VertexSet,
    pub blue: VertexSet,
    pub alice_skips: u8,
    pub bob_skips: u8,
}

impl GameConfig {
    pub fn new(red: VertexSet, blue: VertexSet) -> Self {
        GameConfig { red, blue, alice_skips: 0, bob_skips: 0 }
    }

    /// Alice moves iff she has taken as many turns as Bob, passes included.
    pub fn mover(&self) -> Player {
        if self.red.len() + self.alice_skips as usize == self.blue.len() + self.bob_skips as usize {
            Player::Alice
        } else {
            Player::Bob
        }
    }

    pub fn coloured(&self) -> VertexSet {
        self.red | self.blue
    }

    pub fn uncoloured(&self, g: &Graph) -> VertexSet {
        g.vertices() - self.coloured()
    }

    pub fn skips(&self, p: Player) -> u8 {
        match p {
            Player::Alice => self.alice_skips,
            Player::Bob => self.bob_skips,
        }
    }

    /// Applies a move without any legality check.
    pub fn with_move(mut self, mover: Player, m: Move) -> Self {
        match (mover, m) {
            (Player::Alice, Move::Color(v)) => self.red.insert(v),
            (Player::Bob, Move::Color(v)) => self.blue.insert(v),
            (Player::Alice, Move::Pass) => self.alice_skips += 1,
            (Player::Bob, Move::Pass) => self.bob_skips += 1,
        }
        self
    }

    pub fn validate(&self, g: &Graph, variant: &GameVariant) -> Result<()> {
        if self.red.intersects(self.blue) {
            return Err(Error::domain("red and blue overlap"));
        }
        if !self.coloured().is_subset(g.vertices()) {
            return Err(Error::domain("coloured vertex outside the graph"));
        }
        let (a, b) = (self.red.len() + self.alice_skips as usize, self.blue.len() + self.bob_skips as usize);
        if a != b && a != b + 1 {
            return Err(Error::domain("turn counts are not alternating"));
        }
        if self.alice_skips > variant.skip_budget(Player::Alice) || self.bob_skips > variant.skip_budget(Player::Bob) {
            return Err(Error::domain("skip budget exceeded"));
        }
        Ok(())
    }
}

/// Vertices the mover may colour, and whether passing is allowed. Both are
/// empty once the game is over for the mover.
pub fn legal_set(g: &Graph, variant: &GameVariant, cfg: &GameConfig, mover: Player) -> (VertexSet, bool) {
    let free = cfg.uncoloured(g);
    if free.is_empty() {
        return (VertexSet::EMPTY, false);
    }
    let verts = match (variant, mover) {
        (GameVariant::Connected, Player::Alice) if !cfg.red.is_empty() => g.open_neighborhood(cfg.red) & free,
        _ => free,
    };
    let pass = cfg.skips(mover) < variant.skip_budget(mover);
    (verts, pass)
}

/// Legal moves for the derived mover, by vertex index with `Pass` last.
pub fn legal_moves(g: &Graph, variant: &GameVariant, cfg: &GameConfig) -> Vec<Move> {
    let (verts, pass) = legal_set(g, variant, cfg, cfg.mover());
    let mut out: Vec<Move> = verts.iter().map(Move::Color).collect();
    if pass {
        out.push(Move::Pass);
    }
    out
}

pub fn is_legal(g: &Graph, variant: &GameVariant, cfg: &GameConfig, mover: Player, m: Move) -> bool {
    let (verts, pass) = legal_set(g, variant, cfg, mover);
    match m {
        Move::Color(v) => verts.contains(v),
        Move::Pass => pass,
    }
}

pub fn is_over(g: &Graph, variant: &GameVariant, cfg: &GameConfig) -> bool {
    let (verts, pass) = legal_set(g, variant, cfg, cfg.mover());
    verts.is_empty() && !pass
}

/// Checked move application; the input is left untouched.
pub fn apply_move(g: &Graph, variant: &GameVariant, cfg: &GameConfig, mover: Player, m: Move) -> Result<GameConfig> {
    if mover != cfg.mover() {
        return Err(Error::domain(format!("{mover} moved out of turn")));
    }
    if !is_legal(g, variant, cfg, mover, m) {
        return Err(Error::domain(format!("illegal move {m} for {mover}")));
    }
    Ok(cfg.with_move(mover, m))
}

/// Final score of a red set under the variant's scoring rule.
pub fn score(g: &Graph, variant: &GameVariant, red: VertexSet) -> usize {
    match variant.target() {
        Some(x) => target_score(g, red, x),
        None => crate::graph::largest_component(g, red),
    }
}

/// Total red in red components that meet `x`.
pub fn target_score(g: &Graph, red: VertexSet, x: VertexSet) -> usize {
    let mut rest = red & x;
    let mut total = 0;
    while let Some(v) = rest.min() {
        let c = g.component_within(red, v);
        total += c.len();
        rest = rest - c;
    }
    total
}

/// Everything a strategy may look at when deciding.
#[derive(Clone, Copy)]
pub struct Position<'a> {
    pub graph: &'a Graph,
    pub variant: &'a GameVariant,
    pub config: &'a GameConfig,
}

impl<'a> Position<'a> {
    pub fn mover(&self) -> Player {
        self.config.mover()
    }

    pub fn uncoloured(&self) -> VertexSet {
        self.config.uncoloured(self.graph)
    }

    /// Vertices the mover may colour.
    pub fn legal_vertices(&self) -> VertexSet {
        legal_set(self.graph, self.variant, self.config, self.mover()).0
    }

    /// Lowest legal vertex, or `Pass` when no vertex is available.
    pub fn fallback(&self) -> Move {
        self.legal_vertices().min().map_or(Move::Pass, Move::Color)
    }

    /// Lowest legal vertex in `pref`, else the plain fallback.
    pub fn prefer(&self, pref: VertexSet) -> Move {
        (self.legal_vertices() & pref).min().map_or_else(|| self.fallback(), Move::Color)
    }

    pub fn is_free(&self, v: usize) -> bool {
        v < self.graph.n() && !self.config.coloured().contains(v)
    }
}

/// Small copyable history carried by a strategy between turns. The engine
/// records the opponent's latest move; the data words are the strategy's own.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct PrivateState {
    pub last_opponent: Option<Move>,
    pub data: [u64; 2],
}

/// A deterministic move chooser. `choose` is only called when a legal move
/// exists for the strategy's side.
pub trait Strategy: Send + Sync {
    fn name(&self) -> String;

    fn initial_state(&self, _pos: &Position) -> PrivateState {
        PrivateState::default()
    }

    /// Called after every move of either player, with the position after it.
    fn observe(&self, _pos: &Position, _player: Player, _mv: Move, _state: &mut PrivateState) {}

    fn choose(&self, pos: &Position, state: &PrivateState) -> Move;
}

impl<S: Strategy + ?Sized> Strategy for Box<S> {
    fn name(&self) -> String {
        (**self).name()
    }
    fn initial_state(&self, pos: &Position) -> PrivateState {
        (**self).initial_state(pos)
    }
    fn observe(&self, pos: &Position, player: Player, mv: Move, state: &mut PrivateState) {
        (**self).observe(pos, player, mv, state)
    }
    fn choose(&self, pos: &Position, state: &PrivateState) -> Move {
        (**self).choose(pos, state)
    }
}

impl<S: Strategy + ?Sized> Strategy for std::sync::Arc<S> {
    fn name(&self) -> String {
        (**self).name()
    }
    fn initial_state(&self, pos: &Position) -> PrivateState {
        (**self).initial_state(pos)
    }
    fn observe(&self, pos: &Position, player: Player, mv: Move, state: &mut PrivateState) {
        (**self).observe(pos, player, mv, state)
    }
    fn choose(&self, pos: &Position, state: &PrivateState) -> Move {
        (**self).choose(pos, state)
    }
}

/// Updates a strategy's state after a move; `own` is the side it plays.
pub(crate) fn notify(
    s: &dyn Strategy,
    own: Player,
    pos: &Position,
    player: Player,
    mv: Move,
    state: &mut PrivateState,
) {
    if player != own {
        state.last_opponent = Some(mv);
    }
    s.observe(pos, player, mv, state);
}

/// Colours the lowest legal vertex every turn.
#[derive(Clone, Copy, Debug, Default)]
pub struct LowestIndex;

impl Strategy for LowestIndex {
    fn name(&self) -> String {
        "lowest".into()
    }

    fn choose(&self, pos: &Position, _state: &PrivateState) -> Move {
        pos.fallback()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchTrace {
    pub moves: Vec<(Player, Move)>,
    pub config: GameConfig,
    pub score: usize,
}

impl MatchTrace {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (p, m) in &self.moves {
            out.push_str(&format!("{} {}\n", p.tag(), m));
        }
        out.push_str(&format!("score {}\n", self.score));
        out
    }
}

/// Parses the trace format back into moves and the recorded score.
pub fn parse_trace(text: &str) -> Result<(Vec<(Player, Move)>, usize)> {
    let mut moves = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let (head, rest) =
            line.split_once(' ').ok_or_else(|| Error::parse(i + 1, "expected `<A|B> <move>` or `score <k>`"))?;
        let rest = rest.trim();
        match head {
            "A" | "B" => {
                let p = if head == "A" { Player::Alice } else { Player::Bob };
                let m = rest.parse::<Move>().map_err(|e| Error::parse(i + 1, e))?;
                moves.push((p, m));
            }
            "score" => {
                let k = rest.parse().map_err(|_| Error::parse(i + 1, format!("bad score `{rest}`")))?;
                return Ok((moves, k));
            }
            _ => return Err(Error::parse(i + 1, format!("unknown tag `{head}`"))),
        }
    }
    Err(Error::parse(0, "trace has no `score` line"))
}

/// Replays moves from the empty position, checking each for legality.
pub fn replay(g: &Graph, variant: &GameVariant, moves: &[(Player, Move)]) -> Result<GameConfig> {
    let mut cfg = GameConfig::default();
    for (turn, &(p, m)) in moves.iter().enumerate() {
        cfg = apply_move(g, variant, &cfg, p, m).map_err(|_| Error::IllegalMove {
            turn: turn + 1,
            player: p.to_string(),
            mv: m.to_string(),
        })?;
    }
    Ok(cfg)
}

/// Plays both strategies against each other until the mover has no legal move.
pub fn play_match(g: &Graph, variant: &GameVariant, alice: &dyn Strategy, bob: &dyn Strategy) -> Result<MatchTrace> {
    play_from(g, variant, GameConfig::default(), alice, bob)
}

pub fn play_from(
    g: &Graph,
    variant: &GameVariant,
    start: GameConfig,
    alice: &dyn Strategy,
    bob: &dyn Strategy,
) -> Result<MatchTrace> {
    variant.validate(g)?;
    start.validate(g, variant)?;
    let mut cfg = start;
    let pos = Position { graph: g, variant, config: &cfg };
    let mut sa = alice.initial_state(&pos);
    let mut sb = bob.initial_state(&pos);
    let mut moves = Vec::new();
    while !is_over(g, variant, &cfg) {
        let mover = cfg.mover();
        let (s, st) = match mover {
            Player::Alice => (alice, &sa),
            Player::Bob => (bob, &sb),
        };
        let m = s.choose(&Position { graph: g, variant, config: &cfg }, st);
        if !is_legal(g, variant, &cfg, mover, m) {
            return Err(Error::IllegalMove {
                turn: moves.len() + 1,
                player: format!("{mover} ({})", s.name()),
                mv: m.to_string(),
            });
        }
        cfg = cfg.with_move(mover, m);
        moves.push((mover, m));
        let pos = Position { graph: g, variant, config: &cfg };
        notify(alice, Player::Alice, &pos, mover, m, &mut sa);
        notify(bob, Player::Bob, &pos, mover, m, &mut sb);
    }
    Ok(MatchTrace { moves, config: cfg, score: score(g, variant, cfg.red) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn legal_moves_examples() {
        let c4 = cycle(4);
        let empty = GameConfig::default();
        assert_eq!(
            legal_moves(&c4, &GameVariant::Plain, &empty),
            vec![Move::Color(0), Move::Color(1), Move::Color(2), Move::Color(3)]
        );

        let p3 = path(3);
        let cfg = GameConfig::new(set(&[0]), VertexSet::EMPTY);
        // Bob to move here; Alice's options are what the connected rule restricts.
        let (alice, _) = legal_set(&p3, &GameVariant::Connected, &cfg, Player::Alice);
        assert_eq!(alice, set(&[1]));
        let cfg2 = GameConfig::new(set(&[0]), set(&[2]));
        assert_eq!(legal_moves(&p3, &GameVariant::Connected, &cfg2), vec![Move::Color(1)]);

        let k2 = path(2);
        let skip = GameVariant::SkipBudget { alice: 1, bob: 1, target: None };
        assert_eq!(legal_moves(&k2, &skip, &empty), vec![Move::Color(0), Move::Color(1), Move::Pass]);
    }

    #[test]
    fn apply_move_examples() {
        let g = path(4);
        let v = GameVariant::Plain;
        let c1 = apply_move(&g, &v, &GameConfig::default(), Player::Alice, Move::Color(2)).unwrap();
        assert_eq!(c1.red, set(&[2]));
        assert_eq!(c1.mover(), Player::Bob);
        let c2 = apply_move(&g, &v, &c1, Player::Bob, Move::Color(0)).unwrap();
        assert_eq!(c2.blue, set(&[0]));
        assert!(apply_move(&g, &v, &c2, Player::Bob, Move::Color(1)).is_err());
        assert!(apply_move(&g, &v, &c2, Player::Alice, Move::Color(0)).is_err());
        assert!(apply_move(&g, &v, &c2, Player::Alice, Move::Pass).is_err());

        let skip = GameVariant::SkipBudget { alice: 1, bob: 1, target: None };
        let c3 = apply_move(&g, &skip, &GameConfig::default(), Player::Alice, Move::Pass).unwrap();
        assert_eq!(c3.alice_skips, 1);
        assert_eq!(c3.mover(), Player::Bob);
        assert!(apply_move(&g, &skip, &c3.with_move(Player::Bob, Move::Color(0)), Player::Alice, Move::Pass).is_err());
    }

    #[test]
    fn score_examples() {
        let p4 = path(4);
        let red = set(&[0, 1, 3]);
        assert_eq!(score(&p4, &GameVariant::Plain, red), 2);
        assert_eq!(score(&p4, &GameVariant::TargetSet(set(&[0, 3])), red), 3);
        assert_eq!(score(&p4, &GameVariant::TargetSet(VertexSet::EMPTY), red), 0);
        for v in [GameVariant::Plain, GameVariant::Connected, GameVariant::TargetSet(set(&[1]))] {
            assert_eq!(score(&p4, &v, VertexSet::EMPTY), 0);
        }
    }

    #[test]
    fn matches_with_lowest_index() {
        let k2 = path(2);
        let t = play_match(&k2, &GameVariant::Plain, &LowestIndex, &LowestIndex).unwrap();
        assert_eq!(t.config.red, set(&[0]));
        assert_eq!(t.config.blue, set(&[1]));
        assert_eq!(t.score, 1);

        let c4 = cycle(4);
        let t = play_match(&c4, &GameVariant::Plain, &LowestIndex, &LowestIndex).unwrap();
        assert_eq!(t.config.red, set(&[0, 2]));
        assert_eq!(t.score, 1);
        assert_eq!(replay(&c4, &GameVariant::Plain, &t.moves).unwrap(), t.config);
    }

    struct OpenAt(usize);

    impl Strategy for OpenAt {
        fn name(&self) -> String {
            format!("open-at-{}", self.0)
        }
        fn choose(&self, pos: &Position, _s: &PrivateState) -> Move {
            if pos.config.red.is_empty() && pos.is_free(self.0) {
                Move::Color(self.0)
            } else {
                pos.fallback()
            }
        }
    }

    #[test]
    fn connected_match_on_path() {
        let p3 = path(3);
        let t = play_match(&p3, &GameVariant::Connected, &OpenAt(1), &LowestIndex).unwrap();
        assert!(t.config.red.contains(1));
        assert_eq!(t.score, 2);
    }

    struct Cheater;

    impl Strategy for Cheater {
        fn name(&self) -> String {
            "cheater".into()
        }
        fn choose(&self, _pos: &Position, _s: &PrivateState) -> Move {
            Move::Color(0)
        }
    }

    #[test]
    fn illegal_move_names_the_turn() {
        let g = path(3);
        let err = play_match(&g, &GameVariant::Plain, &LowestIndex, &Cheater).unwrap_err();
        match err {
            Error::IllegalMove { turn, .. } => assert_eq!(turn, 2),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn trace_round_trip() {
        let g = cycle(5);
        let v = GameVariant::SkipBudget { alice: 1, bob: 0, target: None };
        let moves = vec![(Player::Alice, Move::Pass), (Player::Bob, Move::Color(3)), (Player::Alice, Move::Color(0))];
        let cfg = replay(&g, &v, &moves).unwrap();
        let t = MatchTrace { moves: moves.clone(), config: cfg, score: score(&g, &v, cfg.red) };
        let text = t.to_text();
        assert_eq!(text, "A pass\nB v3\nA v0\nscore 1\n");
        let (parsed, k) = parse_trace(&text).unwrap();
        assert_eq!(parsed, moves);
        assert_eq!(k, 1);
    }
}
