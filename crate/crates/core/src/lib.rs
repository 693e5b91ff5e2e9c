//! Maker-Breaker largest connected subgraph game.
//!
//! Alice and Bob alternately colour vertices red and blue; Alice wants a large
//! connected red component. This crate computes game values exactly, runs
//! and verifies constructive strategies, evaluates (q,q-4) decomposition
//! trees, and builds the hardness gadgets used to relate the game to
//! POS CNF and generalized Hex.

pub mod desk;
pub mod error;
pub mod game;
pub mod generators;
pub mod graph;
pub mod planarity;
pub mod qgraph;
pub mod reductions;
pub mod solver;
pub mod strategies;
pub mod verify;

pub use error::{Error, Result};
pub use game::{GameConfig, GameVariant, MatchTrace, Move, Player, Position, PrivateState, Strategy};
pub use graph::{Graph, Matching, VertexSet};
