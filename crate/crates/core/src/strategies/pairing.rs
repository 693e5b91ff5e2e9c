//! Respond-to-the-opponent strategies driven by a pairing plan.

use crate::error::{Error, Result};
use crate::game::{Move, Position, PrivateState, Strategy};
use crate::graph::{Graph, VertexSet};

/// Vertex pairs plus prioritized special-case responses.
///
/// When the opponent colours `v`, the first available vertex of the trigger
/// list for `v` is played; failing that, `v`'s partner if it is free;
/// failing that, the lowest legal vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PairingPlan {
    pub pairs: Vec<(usize, usize)>,
    pub triggers: Vec<(usize, Vec<usize>)>,
    /// First move when the strategy moves before any opponent move.
    pub opening: Option<usize>,
}

impl PairingPlan {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        PairingPlan { pairs: pairs.into_iter().collect(), ..Default::default() }
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        let n = g.n();
        let mut seen = VertexSet::EMPTY;
        for &(a, b) in &self.pairs {
            if a >= n || b >= n || a == b {
                return Err(Error::domain(format!("invalid pair {a}-{b}")));
            }
            if seen.contains(a) || seen.contains(b) {
                return Err(Error::domain(format!("pairs overlap at {a}-{b}")));
            }
            seen.insert(a);
            seen.insert(b);
        }
        for (v, resp) in &self.triggers {
            if *v >= n || resp.iter().any(|&r| r >= n) {
                return Err(Error::domain(format!("trigger on {v} references a missing vertex")));
            }
        }
        if matches!(self.opening, Some(o) if o >= n) {
            return Err(Error::domain("opening vertex out of range"));
        }
        Ok(())
    }
}

pub struct PairingStrategy {
    name: String,
    partner: Vec<Option<usize>>,
    triggers: Vec<Vec<usize>>,
    opening: Option<usize>,
}

impl PairingStrategy {
    pub fn new(name: impl Into<String>, g: &Graph, plan: &PairingPlan) -> Result<Self> {
        plan.validate(g)?;
        let n = g.n();
        let mut partner = vec![None; n];
        for &(a, b) in &plan.pairs {
            partner[a] = Some(b);
            partner[b] = Some(a);
        }
        let mut triggers = vec![Vec::new(); n];
        for (v, resp) in &plan.triggers {
            triggers[*v].extend_from_slice(resp);
        }
        Ok(PairingStrategy { name: name.into(), partner, triggers, opening: plan.opening })
    }
}

/// Convenience wrapper for [`PairingStrategy::new`].
pub fn make_pairing_strategy(g: &Graph, plan: &PairingPlan) -> Result<PairingStrategy> {
    PairingStrategy::new("pairing", g, plan)
}

impl Strategy for PairingStrategy {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn choose(&self, pos: &Position, state: &PrivateState) -> Move {
        let legal = pos.legal_vertices();
        match state.last_opponent {
            Some(Move::Color(v)) if v < self.partner.len() => {
                if let Some(&r) = self.triggers[v].iter().find(|&&r| legal.contains(r)) {
                    return Move::Color(r);
                }
                match self.partner[v] {
                    Some(p) if legal.contains(p) => Move::Color(p),
                    _ => pos.fallback(),
                }
            }
            None => match self.opening {
                Some(o) if legal.contains(o) => Move::Color(o),
                _ => pos.fallback(),
            },
            _ => pos.fallback(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{play_match, GameConfig, GameVariant, LowestIndex, Player};

    fn after(g: &Graph, red: &[usize], blue: &[usize], last: Option<Move>, s: &PairingStrategy) -> Move {
        let cfg = GameConfig::new(red.iter().copied().collect(), blue.iter().copied().collect());
        let pos = Position { graph: g, variant: &GameVariant::Plain, config: &cfg };
        s.choose(&pos, &PrivateState { last_opponent: last, data: [0; 2] })
    }

    #[test]
    fn answers_with_partner() {
        let g = crate::generators::cycle(4).unwrap().graph;
        let s = make_pairing_strategy(&g, &PairingPlan::from_pairs([(0, 1), (2, 3)])).unwrap();
        assert_eq!(after(&g, &[0], &[], Some(Move::Color(0)), &s), Move::Color(1));
        // Partner already taken: lowest free vertex.
        assert_eq!(after(&g, &[0, 1], &[3], Some(Move::Color(1)), &s), Move::Color(2));
    }

    #[test]
    fn triggers_take_priority() {
        let g = crate::generators::path(4).unwrap().graph;
        let plan = PairingPlan { pairs: vec![(0, 1)], triggers: vec![(0, vec![3, 2])], opening: None };
        let s = make_pairing_strategy(&g, &plan).unwrap();
        assert_eq!(after(&g, &[0], &[], Some(Move::Color(0)), &s), Move::Color(3));
        assert_eq!(after(&g, &[0, 3], &[], Some(Move::Color(0)), &s), Move::Color(2));
    }

    #[test]
    fn rejects_overlapping_pairs() {
        let g = crate::generators::path(3).unwrap().graph;
        assert!(make_pairing_strategy(&g, &PairingPlan::from_pairs([(0, 1), (1, 2)])).is_err());
    }

    #[test]
    fn plays_full_match() {
        let g = crate::generators::cycle(4).unwrap().graph;
        let bob = make_pairing_strategy(&g, &PairingPlan::from_pairs([(0, 1), (2, 3)])).unwrap();
        let t = play_match(&g, &GameVariant::Plain, &LowestIndex, &bob).unwrap();
        assert_eq!(t.moves[1], (Player::Bob, Move::Color(1)));
        assert_eq!(t.score, 1);
    }
}
