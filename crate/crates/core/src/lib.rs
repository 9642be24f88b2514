//! Randomized greedy matching on general graphs.
//!
//! * [`graph`]: graphs, generators and exact graph oracles.
//! * [`greedy`]: the query-commit greedy matcher and the order families built on it.
//! * [`structure`]: alternating paths, backups, blockers, profiles and rank thresholds.
//! * [`lp`]: the discretized factor-revealing programs, a dense simplex solver,
//!   LP/MPS export and solution verification.
//! * [`harness`]: exact and sampled approximation ratios, lemma property suites
//!   and bound dominance checks.

pub mod error;
pub mod graph;
pub mod greedy;
pub mod harness;
pub mod lp;
pub mod perm;
pub mod rng;
pub mod structure;

pub use error::{Error, Result};
