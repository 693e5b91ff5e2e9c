//! Hardness constructions from positive CNF and Generalised Hex, with
//! brute-force solvers for both source games.

mod build;
mod cnf;
mod hex;
mod lift;

pub use build::{
    build_bipartite, build_planar, build_split, check_structure, CnfLayout, PlanarLayout, ReductionKind,
    ReductionOutput, Source,
};
pub use cnf::{parse_cnf, solve_poscnf, CnfInstance, CnfSolver, MAX_CNF_VARS};
pub use hex::{parse_hex, solve_hex, HexInstance, HexSolver, MAX_HEX_VERTICES};
pub use lift::lift_strategy;
