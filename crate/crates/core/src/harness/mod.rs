//! Exact and sampled approximation ratios, bound dominance checks, the
//! lemma property suite and the discrete uniform-distribution bound.

mod dominance;
mod kernel;
pub mod lemmas;
mod ratio;
mod uniform;

use serde::{Deserialize, Serialize};

pub use dominance::{check_bound_dominance, write_csv, DominanceReport, DominanceRow, Evaluation, InstanceFamily};
pub use lemmas::{
    lemma_names, lemma_suite, lemma_suite_with, replay_witness, run_check, CheckReport, LemmaInstance, LemmaReport,
    LemmaWitness, ListSpec, SuiteOptions,
};
pub use ratio::{
    adversarial_order_search, exact_expected_ratio, exact_limit, monte_carlo_ratio, trial_seed, EXACT_DOUBLE_LIMIT,
    EXACT_SINGLE_LIMIT,
};
pub use uniform::{uniform_bound_check, UniformBoundReport};

/// Expected matching size over the maximum matching size.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioEstimate {
    pub mean: f64,
    /// Enumerated outcomes in exact mode, samples otherwise.
    pub trials: u64,
    /// Zero in exact mode.
    pub std_error: f64,
    pub exact: bool,
}

impl RatioEstimate {
    pub fn exact(mean: f64, trials: u64) -> Self {
        RatioEstimate { mean, trials, std_error: 0.0, exact: true }
    }
}
