//! The query-commit greedy matcher and the order families built on it.

mod algorithms;
mod engine;
mod fully_online;
mod list;
mod ranks;
mod trace;

pub use algorithms::{build_algorithm_list, franking_list, order_keys, ranking_list, AlgorithmKind};
pub use engine::greedy_match;
pub use fully_online::{fully_online_match, fully_online_match_with_ranks, Event, FullyOnlineOutcome, Schedule};
pub use list::{exclude, Order, Preference, QueryList};
pub use ranks::{check_permutation, RankVector};
pub use trace::{MatchedPair, MatchingTrace};
