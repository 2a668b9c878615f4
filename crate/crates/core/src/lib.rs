//! Mixed dimer covers on snake graphs.
//!
//! Snake graphs are built from words over `{R, U}`. The crate enumerates
//! mixed dimer covers, counts them with transfer matrices, relates them to
//! alternating and 132-avoiding permutations, orders them by face twists,
//! and implements the tile-map duality together with the network and
//! matching-graph models.

pub mod cli;
pub mod dimer_covers;
pub mod duality_paths;
pub mod error;
pub mod permutation_bridge;
pub mod snake_core;
pub mod transfer_matrices;
pub mod twist_lattice;

pub use error::{Error, Result};
