use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::list::{Preference, QueryList};
use super::ranks::{check_permutation, RankVector};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::rng;

/// Randomized greedy algorithms expressible as a decision order π and
/// preference orders σ(v).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum AlgorithmKind {
    /// π and every σ(v) adversarial.
    Greedy,
    /// π adversarial, σ(v) independent uniform per vertex.
    Irp,
    /// π uniform, σ fixed to the identity.
    Rdo,
    /// π uniform, σ(v) independent uniform per vertex.
    Mrg,
    /// π uniform, one common uniform σ independent of π.
    Uur,
    /// π and σ given by one common uniform rank vector.
    Ranking,
    /// π adversarial, one common uniform σ.
    Franking,
}

impl AlgorithmKind {
    pub const ALL: [AlgorithmKind; 7] = [
        AlgorithmKind::Greedy,
        AlgorithmKind::Irp,
        AlgorithmKind::Rdo,
        AlgorithmKind::Mrg,
        AlgorithmKind::Uur,
        AlgorithmKind::Ranking,
        AlgorithmKind::Franking,
    ];

    /// Whether the decision order is supplied by the adversary.
    pub fn needs_adversarial_order(self) -> bool {
        matches!(self, AlgorithmKind::Greedy | AlgorithmKind::Irp | AlgorithmKind::Franking)
    }

    pub fn name(self) -> &'static str {
        match self {
            AlgorithmKind::Greedy => "GREEDY",
            AlgorithmKind::Irp => "IRP",
            AlgorithmKind::Rdo => "RDO",
            AlgorithmKind::Mrg => "MRG",
            AlgorithmKind::Uur => "UUR",
            AlgorithmKind::Ranking => "RANKING",
            AlgorithmKind::Franking => "FRANKING",
        }
    }
}

impl fmt::Display for AlgorithmKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgorithmKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        AlgorithmKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown algorithm kind {s:?}")))
    }
}

/// Keys placing `order[i]` at position `i`.
pub fn order_keys(order: &[Vertex]) -> Vec<f64> {
    let mut keys = vec![0.0; order.len()];
    for (i, &v) in order.iter().enumerate() {
        keys[v] = i as f64;
    }
    keys
}

/// Ranking: ordered pairs sorted by `(x_u, x_v)`.
pub fn ranking_list(x: &RankVector) -> QueryList {
    let keys = x.as_slice().to_vec();
    QueryList::vertex_iterative(keys.clone(), Preference::Common(keys)).expect("rank vectors are distinct")
}

/// FRanking: ordered pairs sorted by `(π position of u, x_v)`, where
/// `decision_order[i]` is the `i`-th decider.
pub fn franking_list(decision_order: &[Vertex], x: &RankVector) -> Result<QueryList> {
    check_permutation(decision_order, x.len())?;
    QueryList::vertex_iterative(order_keys(decision_order), Preference::Common(x.as_slice().to_vec()))
}

fn uniform_order(n: usize, rng: &mut rng::Rng) -> Vec<Vertex> {
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(rng);
    order
}

fn per_vertex_uniform(n: usize, rng: &mut rng::Rng) -> Vec<Vec<f64>> {
    (0..n).map(|_| order_keys(&uniform_order(n, rng))).collect()
}

/// The list `π × σ` of one run of `kind`, with randomness drawn from `seed`.
///
/// For GREEDY the adversarial order serves as both π and the common σ.
pub fn build_algorithm_list(
    kind: AlgorithmKind,
    g: &Graph,
    adversarial_order: Option<&[Vertex]>,
    seed: u64,
) -> Result<QueryList> {
    let n = g.vertex_count();
    let adversarial = match (kind.needs_adversarial_order(), adversarial_order) {
        (true, None) => return Err(Error::InvalidParameter(format!("{kind} requires an adversarial order"))),
        (true, Some(order)) => {
            check_permutation(order, n)?;
            order_keys(order)
        }
        (false, _) => Vec::new(),
    };
    let mut rng = rng::from_seed(seed);
    let rng = &mut rng;
    match kind {
        AlgorithmKind::Greedy => QueryList::vertex_iterative(adversarial.clone(), Preference::Common(adversarial)),
        AlgorithmKind::Irp => QueryList::vertex_iterative(adversarial, Preference::PerVertex(per_vertex_uniform(n, rng))),
        AlgorithmKind::Rdo => {
            let pi = order_keys(&uniform_order(n, rng));
            QueryList::vertex_iterative(pi, Preference::Common((0..n).map(|v| v as f64).collect()))
        }
        AlgorithmKind::Mrg => {
            let pi = order_keys(&uniform_order(n, rng));
            QueryList::vertex_iterative(pi, Preference::PerVertex(per_vertex_uniform(n, rng)))
        }
        AlgorithmKind::Uur => {
            let pi = order_keys(&uniform_order(n, rng));
            let sigma = order_keys(&uniform_order(n, rng));
            QueryList::vertex_iterative(pi, Preference::Common(sigma))
        }
        AlgorithmKind::Ranking => Ok(ranking_list(&RankVector::sample(n, rng))),
        AlgorithmKind::Franking => {
            let x = RankVector::sample(n, rng);
            QueryList::vertex_iterative(adversarial, Preference::Common(x.as_slice().to_vec()))
        }
    }
}
