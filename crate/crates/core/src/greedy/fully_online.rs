use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::algorithms::franking_list;
use super::ranks::{check_permutation, RankVector};
use super::trace::MatchingTrace;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::rng;

/// Event of the fully online model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Event {
    Arrive(Vertex),
    Deadline(Vertex),
}

/// Interleaved arrivals and deadlines; every vertex arrives once and reaches
/// its deadline once, later.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule {
    vertex_count: usize,
    events: Vec<Event>,
}

impl Schedule {
    pub fn new(vertex_count: usize, events: Vec<Event>) -> Result<Self> {
        let mut state = vec![0u8; vertex_count];
        for e in &events {
            let (v, want) = match *e {
                Event::Arrive(v) => (v, 0),
                Event::Deadline(v) => (v, 1),
            };
            if v >= vertex_count || state[v] != want {
                return Err(Error::InvalidParameter(format!("event {e:?} out of order")));
            }
            state[v] += 1;
        }
        if state.iter().any(|&s| s != 2) {
            return Err(Error::InvalidParameter("every vertex needs an arrival and a deadline".into()));
        }
        Ok(Schedule { vertex_count, events })
    }

    /// Events sorted by time. At equal times arrivals come first, then lower vertex index.
    pub fn from_times(arrival: &[f64], deadline: &[f64]) -> Result<Self> {
        let n = arrival.len();
        if deadline.len() != n {
            return Err(Error::InvalidParameter("arrival and deadline lengths differ".into()));
        }
        let mut timed: Vec<(f64, u8, Vertex)> = Vec::with_capacity(2 * n);
        for v in 0..n {
            if !(arrival[v] <= deadline[v]) {
                return Err(Error::InvalidParameter(format!("vertex {v} has its deadline before its arrival")));
            }
            timed.push((arrival[v], 0, v));
            timed.push((deadline[v], 1, v));
        }
        timed.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
        let events = timed
            .into_iter()
            .map(|(_, kind, v)| if kind == 0 { Event::Arrive(v) } else { Event::Deadline(v) })
            .collect();
        Schedule::new(n, events)
    }

    /// Everyone arrives (in index order) before the first deadline.
    pub fn all_arrive_first(deadline_order: &[Vertex]) -> Result<Self> {
        let n = deadline_order.len();
        check_permutation(deadline_order, n)?;
        let events = (0..n).map(Event::Arrive).chain(deadline_order.iter().map(|&v| Event::Deadline(v))).collect();
        Schedule::new(n, events)
    }

    /// Uniformly random interleaving: shuffle two tokens per vertex; the
    /// first occurrence is the arrival, the second the deadline.
    pub fn random(vertex_count: usize, rng: &mut rng::Rng) -> Self {
        let mut tokens: Vec<Vertex> = (0..vertex_count).flat_map(|v| [v, v]).collect();
        tokens.shuffle(rng);
        let mut seen = vec![false; vertex_count];
        let events = tokens
            .into_iter()
            .map(|v| if std::mem::replace(&mut seen[v], true) { Event::Deadline(v) } else { Event::Arrive(v) })
            .collect();
        Schedule { vertex_count, events }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn arrival_order(&self) -> Vec<Vertex> {
        self.events.iter().filter_map(|e| if let Event::Arrive(v) = *e { Some(v) } else { None }).collect()
    }

    pub fn deadline_order(&self) -> Vec<Vertex> {
        self.events.iter().filter_map(|e| if let Event::Deadline(v) = *e { Some(v) } else { None }).collect()
    }

    fn positions(&self) -> (Vec<usize>, Vec<usize>) {
        let mut arrive = vec![0; self.vertex_count];
        let mut deadline = vec![0; self.vertex_count];
        for (i, e) in self.events.iter().enumerate() {
            match *e {
                Event::Arrive(v) => arrive[v] = i,
                Event::Deadline(v) => deadline[v] = i,
            }
        }
        (arrive, deadline)
    }
}

/// Result of a fully online run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FullyOnlineOutcome {
    pub trace: MatchingTrace,
    pub ranks: RankVector,
    /// Edges whose endpoints do not both arrive before the earlier deadline.
    pub dropped_edges: Vec<(Vertex, Vertex)>,
    /// The input graph without the dropped edges.
    pub effective_graph: Graph,
}

/// Fully-Ranking with ranks drawn at arrival time, in arrival order.
pub fn fully_online_match(g: &Graph, schedule: &Schedule, seed: u64) -> Result<FullyOnlineOutcome> {
    let mut rng = rng::from_seed(seed);
    let mut ranks = vec![0.0; schedule.vertex_count()];
    let mut drawn: Vec<f64> = Vec::with_capacity(ranks.len());
    for v in schedule.arrival_order() {
        let mut x = 1.0 - rng.random::<f64>();
        while drawn.contains(&x) {
            x = 1.0 - rng.random::<f64>();
        }
        drawn.push(x);
        ranks[v] = x;
    }
    fully_online_match_with_ranks(g, schedule, &RankVector::new(ranks)?)
}

/// Fully-Ranking with given ranks: at its deadline an unmatched vertex takes
/// its lowest-ranked neighbor that has arrived and is still unmatched.
pub fn fully_online_match_with_ranks(g: &Graph, schedule: &Schedule, ranks: &RankVector) -> Result<FullyOnlineOutcome> {
    let n = g.vertex_count();
    if schedule.vertex_count() != n || ranks.len() != n {
        return Err(Error::InvalidParameter("schedule, ranks and graph sizes differ".into()));
    }
    let (arrive, deadline) = schedule.positions();
    let (kept, dropped): (Vec<_>, Vec<_>) =
        g.edges().partition(|&(u, v)| arrive[u].max(arrive[v]) < deadline[u].min(deadline[v]));
    for &(u, v) in &dropped {
        log::warn!("dropping edge ({u},{v}): an endpoint arrives after the other's deadline");
    }
    let effective = Graph::new(n, kept)?;
    let list = franking_list(&schedule.deadline_order(), ranks)?;
    let mut trace = MatchingTrace::empty(n, |_| false);
    let mut arrived = vec![false; n];
    for e in schedule.events() {
        match *e {
            Event::Arrive(v) => arrived[v] = true,
            Event::Deadline(v) => {
                if trace.is_matched(v) {
                    continue;
                }
                let best = effective
                    .neighbors(v)
                    .iter()
                    .copied()
                    .filter(|&u| arrived[u] && !trace.is_matched(u))
                    .min_by(|&a, &b| ranks.get(a).total_cmp(&ranks.get(b)));
                if let Some(u) = best {
                    trace.record(v, u, list.time(v, u));
                }
            }
        }
    }
    Ok(FullyOnlineOutcome { trace, ranks: ranks.clone(), dropped_edges: dropped, effective_graph: effective })
}
