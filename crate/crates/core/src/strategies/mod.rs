//! Constructive strategies, addressable by name.

pub mod cubic;
pub mod degree;
pub mod families;
pub mod pairing;

use std::collections::BTreeMap;

pub use cubic::{cubic_bob, find_suitable_matching, CubicBob, SuitableMatching};
pub use degree::{alice_degree_sum, alice_max_degree};
pub use families::{
    cartesian_bob, clique_chain_bob, hex_pairing_bob, king_mirror_alice, regular4_alice, regular5_alice, spider_exhaust,
};
pub use pairing::{make_pairing_strategy, PairingPlan, PairingStrategy};

use crate::error::{Error, Result};
use crate::game::{GameVariant, LowestIndex, Player, Strategy};
use crate::graph::Graph;
use crate::solver::{optimal_strategy, SolveOptions};

/// A strategy name with `key=value` parameters, written `name:k=v,k2=v2`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StrategySpec {
    pub name: String,
    pub params: BTreeMap<String, String>,
}

impl StrategySpec {
    pub fn parse(text: &str) -> Result<Self> {
        let (name, rest) = text.split_once(':').unwrap_or((text, ""));
        if name.is_empty() {
            return Err(Error::domain("empty strategy name"));
        }
        let mut params = BTreeMap::new();
        for item in rest.split(',').filter(|s| !s.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::domain(format!("strategy parameter `{item}` is not key=value")))?;
            params.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(StrategySpec { name: name.to_string(), params })
    }

    pub fn usize_param(&self, key: &str) -> Result<Option<usize>> {
        self.params
            .get(key)
            .map(|v| v.parse().map_err(|_| Error::domain(format!("parameter `{key}` must be an integer"))))
            .transpose()
    }
}

/// Names accepted by [`builtin_strategy`], with the side each one plays.
pub const BUILTINS: &[(&str, Option<Player>)] = &[
    ("lowest", None),
    ("optimal", None),
    ("alice_max_degree", Some(Player::Alice)),
    ("alice_degree_sum", Some(Player::Alice)),
    ("regular4_alice", Some(Player::Alice)),
    ("regular5_alice", Some(Player::Alice)),
    ("king_mirror_alice", Some(Player::Alice)),
    ("spider_exhaust_alice", Some(Player::Alice)),
    ("clique_chain_bob", Some(Player::Bob)),
    ("cubic_bob", Some(Player::Bob)),
    ("cartesian_bob", Some(Player::Bob)),
    ("hex_pairing_bob", Some(Player::Bob)),
    ("spider_exhaust_bob", Some(Player::Bob)),
];

/// Builds a named strategy for `side` on `g`. Family strategies check that
/// `g` has the documented index layout; solver-backed ones honour `opts`.
pub fn builtin_strategy(
    spec: &StrategySpec,
    g: &Graph,
    variant: &GameVariant,
    side: Player,
    opts: &SolveOptions,
) -> Result<Box<dyn Strategy>> {
    let expected = BUILTINS
        .iter()
        .find(|(n, _)| *n == spec.name)
        .ok_or_else(|| Error::domain(format!("unknown strategy `{}`", spec.name)))?
        .1;
    if let Some(p) = expected {
        if p != side {
            return Err(Error::domain(format!("strategy `{}` plays {p}, not {side}", spec.name)));
        }
    }
    let s: Box<dyn Strategy> = match spec.name.as_str() {
        "lowest" => Box::new(LowestIndex),
        "optimal" => optimal_strategy(g, variant, side, opts)?,
        "alice_max_degree" => Box::new(alice_max_degree(g)?),
        "alice_degree_sum" => Box::new(alice_degree_sum(g)?),
        "regular4_alice" => Box::new(regular4_alice(g)?),
        "regular5_alice" => Box::new(regular5_alice(g)?),
        "king_mirror_alice" => Box::new(king_mirror_alice(g)?),
        "clique_chain_bob" => Box::new(clique_chain_bob(g)?),
        "cartesian_bob" => Box::new(cartesian_bob(g, spec.usize_param("rows")?, spec.usize_param("cols")?)?),
        "hex_pairing_bob" => Box::new(hex_pairing_bob(g, spec.usize_param("width")?)?),
        "cubic_bob" => {
            let bob = cubic_bob(g)?;
            match spec.params.get("choice").map(String::as_str) {
                None | Some("low") => Box::new(bob),
                Some("high") => Box::new(bob.highest_first()),
                Some(c) => return Err(Error::domain(format!("cubic_bob choice `{c}` is not low or high"))),
            }
        }
        "spider_exhaust_alice" | "spider_exhaust_bob" => {
            let k = spec.usize_param("k")?.ok_or_else(|| Error::domain("spider strategies need parameter k"))?;
            Box::new(spider_exhaust(g, k, side == Player::Alice)?)
        }
        _ => unreachable!("listed in BUILTINS"),
    };
    Ok(s)
}
