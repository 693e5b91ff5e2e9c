//! Game values on graphs with few induced `P4`s, from a decomposition tree.

mod eval;
pub mod instances;
mod strategy;
mod tree;

pub use eval::{cg_qgraph, cg_qgraph_with, combine, matched_spider_value, QgraphValue};
pub use strategy::{alice_strategy_qgraph, alice_strategy_qgraph_with, QgraphAlice};
pub use tree::{is_valid_tree, parse_tree, validate_tree, DecompositionTree, Flavor, Node, TreeDiagnostic};
