//! Exact invariants of Brieskorn-Pham links.
//!
//! The crate computes, with exact or certified arithmetic:
//!
//! * Milnor numbers, weights and the positivity criterion `|w| - d > 0`
//!   ([`link_model`]);
//! * the signature of the Milnor fibre by lattice enumeration, a residue-class
//!   convolution, and Zagier's cotangent sum ([`signature`]);
//! * the integral monodromy and the homology of cyclic branched covers via
//!   Smith normal form ([`monodromy`]);
//! * orders of the groups `bP_{4m}`, the counts `D_n(k)` and diffeomorphism
//!   offsets between links ([`classify`]).
//!
//! The `brieskorn` binary wraps these in a command line tool ([`cli`]).

pub mod classify;
pub mod cli;
pub mod error;
pub mod exact_arith;
pub mod link_model;
pub mod monodromy;
pub mod signature;

use serde::{Deserialize, Serialize};

pub use error::{Error, Result};

/// Size limits that keep a request at desk scale.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Budgets {
    /// Maximum number of lattice points enumerated directly.
    pub lattice_points: u64,
    /// Maximum `2N * variables` cells for the residue convolution.
    pub dp_cells: u64,
    /// Maximum Milnor number for which the monodromy matrix is built.
    pub matrix_size: u64,
    /// Automatic dispatch uses enumeration up to this many points.
    pub lattice_auto_threshold: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            lattice_points: 100_000_000,
            dp_cells: 100_000_000,
            matrix_size: 4096,
            lattice_auto_threshold: 10_000,
        }
    }
}

impl Budgets {
    /// Every budget capped at `limit`.
    pub fn uniform(limit: u64) -> Self {
        let d = Budgets::default();
        Budgets {
            lattice_points: limit,
            dp_cells: limit,
            matrix_size: limit,
            lattice_auto_threshold: d.lattice_auto_threshold.min(limit),
        }
    }
}
