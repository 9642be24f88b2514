use serde::{Deserialize, Serialize};

use crate::graph::Vertex;

/// A matched pair with the list position that realized it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MatchedPair {
    pub time: usize,
    pub active: Vertex,
    pub passive: Vertex,
}

/// Output of one greedy run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "TraceData", into = "TraceData")]
pub struct MatchingTrace {
    mate: Vec<Option<Vertex>>,
    time: Vec<Option<usize>>,
    active: Vec<bool>,
    excluded: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct TraceData {
    vertex_count: usize,
    pairs: Vec<MatchedPair>,
    excluded: Vec<Vertex>,
}

impl From<TraceData> for MatchingTrace {
    fn from(d: TraceData) -> Self {
        MatchingTrace::from_pairs(d.vertex_count, &d.pairs, &d.excluded)
    }
}

impl From<MatchingTrace> for TraceData {
    fn from(t: MatchingTrace) -> Self {
        TraceData { vertex_count: t.vertex_count(), pairs: t.pairs(), excluded: t.excluded() }
    }
}

impl MatchingTrace {
    pub(crate) fn empty(n: usize, excluded: impl Fn(Vertex) -> bool) -> Self {
        MatchingTrace {
            mate: vec![None; n],
            time: vec![None; n],
            active: vec![false; n],
            excluded: (0..n).map(excluded).collect(),
        }
    }

    pub(crate) fn record(&mut self, active: Vertex, passive: Vertex, time: usize) {
        self.mate[active] = Some(passive);
        self.mate[passive] = Some(active);
        self.time[active] = Some(time);
        self.time[passive] = Some(time);
        self.active[active] = true;
    }

    /// Builds a trace from its pairs without checking them against any graph
    /// or list. Meant for tests and replays; the caller is trusted.
    pub fn from_pairs(vertex_count: usize, pairs: &[MatchedPair], excluded: &[Vertex]) -> Self {
        let mut t = Self::empty(vertex_count, |v| excluded.contains(&v));
        for p in pairs {
            t.record(p.active, p.passive, p.time);
        }
        t
    }

    pub fn vertex_count(&self) -> usize {
        self.mate.len()
    }

    pub fn mate(&self, v: Vertex) -> Option<Vertex> {
        self.mate[v]
    }

    pub fn mates(&self) -> &[Option<Vertex>] {
        &self.mate
    }

    pub fn is_matched(&self, v: Vertex) -> bool {
        self.mate[v].is_some()
    }

    /// Query time of v's match.
    pub fn match_time(&self, v: Vertex) -> Option<usize> {
        self.time[v]
    }

    /// Whether v is the active endpoint of its match.
    pub fn is_active(&self, v: Vertex) -> bool {
        self.active[v]
    }

    pub fn is_excluded(&self, v: Vertex) -> bool {
        self.excluded[v]
    }

    pub fn excluded(&self) -> Vec<Vertex> {
        (0..self.vertex_count()).filter(|&v| self.excluded[v]).collect()
    }

    /// Number of matched pairs.
    pub fn size(&self) -> usize {
        self.mate.iter().flatten().count() / 2
    }

    /// Matched pairs in increasing query time.
    pub fn pairs(&self) -> Vec<MatchedPair> {
        let mut out: Vec<MatchedPair> = (0..self.vertex_count())
            .filter(|&v| self.active[v])
            .map(|v| MatchedPair { time: self.time[v].unwrap(), active: v, passive: self.mate[v].unwrap() })
            .collect();
        out.sort();
        out
    }

    /// The partial run consisting of queries at positions `≤ t`.
    pub fn truncated(&self, t: usize) -> MatchingTrace {
        let pairs: Vec<MatchedPair> = self.pairs().into_iter().filter(|p| p.time <= t).collect();
        Self::from_pairs(self.vertex_count(), &pairs, &self.excluded())
    }

    /// Vertices still available once the queries at positions `≤ t` are processed.
    pub fn available_after(&self, t: usize) -> Vec<bool> {
        (0..self.vertex_count())
            .map(|v| !self.excluded[v] && self.time[v].is_none_or(|s| s > t))
            .collect()
    }

    /// `v` is worse off in `self` than in `reference`: matched strictly later, or unmatched
    /// although it was matched in `reference`.
    pub fn worse_off_than(&self, reference: &MatchingTrace, v: Vertex) -> bool {
        match (reference.time[v], self.time[v]) {
            (Some(_), None) => true,
            (Some(a), Some(b)) => b > a,
            (None, _) => false,
        }
    }
}
