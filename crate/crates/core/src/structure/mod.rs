//! Alternating paths, backups, blockers, profiles and rank thresholds.
//!
//! Every operation re-runs a greedy engine. [`Analyzer`] carries the graph
//! and the engine so that the same analysis can be driven by an alternative
//! matcher; the free functions use [`greedy_match`].

mod path;
mod profile;
mod thresholds;

use crate::error::Result;
use crate::graph::{Graph, Vertex};
use crate::greedy::{greedy_match, MatchingTrace, QueryList, RankVector};

pub use path::{AlternatingPath, PathRuns};
pub use profile::{Profile, ProfileKind, Tag};
pub use thresholds::{Context, InsertionOutcome, IntervalSummary, ThresholdReport, Witness};

/// A greedy matcher.
pub type Engine = fn(&Graph, &QueryList) -> MatchingTrace;

/// Structural analysis of one graph under a given engine.
#[derive(Clone, Copy)]
pub struct Analyzer<'g> {
    pub graph: &'g Graph,
    pub engine: Engine,
}

impl<'g> Analyzer<'g> {
    /// Analyzer using the standard greedy engine.
    pub fn new(graph: &'g Graph) -> Self {
        Analyzer { graph, engine: greedy_match }
    }

    pub fn with_engine(graph: &'g Graph, engine: Engine) -> Self {
        Analyzer { graph, engine }
    }

    pub fn run(&self, list: &QueryList) -> MatchingTrace {
        (self.engine)(self.graph, list)
    }
}

pub fn alternating_path(g: &Graph, list: &QueryList, v: Vertex) -> Result<AlternatingPath> {
    Analyzer::new(g).alternating_path(list, v)
}

pub fn backup_of(g: &Graph, list: &QueryList, u: Vertex) -> Result<Option<Vertex>> {
    Analyzer::new(g).backup_of(list, u)
}

pub fn blockers_of(g: &Graph, list: &QueryList, u: Vertex) -> Result<Vec<Vertex>> {
    Analyzer::new(g).blockers_of(list, u)
}

pub fn ranking_profile(g: &Graph, x: &RankVector, u: Vertex, ustar: Vertex) -> Result<Profile> {
    Analyzer::new(g).ranking_profile(x, u, ustar)
}

pub fn franking_profile(g: &Graph, pi: &[Vertex], x: &RankVector, u: Vertex, ustar: Vertex) -> Result<Profile> {
    Analyzer::new(g).franking_profile(pi, x, u, ustar)
}

pub fn insertion_outcomes(g: &Graph, base_x: &RankVector, ustar: Vertex, context: &Context) -> Result<Vec<InsertionOutcome>> {
    Analyzer::new(g).insertion_outcomes(base_x, ustar, context, &[])
}

pub fn thresholds(g: &Graph, base_x: &RankVector, u: Vertex, ustar: Vertex, context: &Context) -> Result<ThresholdReport> {
    Analyzer::new(g).thresholds(base_x, u, ustar, context)
}
