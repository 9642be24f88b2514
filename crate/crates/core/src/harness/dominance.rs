use std::io::Write;

use serde::{Deserialize, Serialize};

use super::ratio::{adversarial_order_search, exact_expected_ratio, monte_carlo_ratio, trial_seed};
use crate::error::{Error, Result};
use crate::graph::{generate_odd_girth_graph, generate_perfect_matching_graph, perfect_matching_graphs, Graph, Vertex};
use crate::greedy::AlgorithmKind;

/// Attempts per odd-girth instance before generation gives up.
const ODD_GIRTH_ATTEMPTS: usize = 1000;

/// Source of graphs for a dominance check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "family")]
pub enum InstanceFamily {
    /// Every enumerated perfect-matching graph with 1 to `max_pairs` pairs.
    AllPerfectMatching { max_pairs: usize },
    /// Random perfect-matching graphs with extra-edge probability `p`.
    RandomPerfectMatching { pairs: usize, p: f64, count: usize, seed: u64 },
    /// Random perfect-matching graphs of odd girth at least `min_odd_girth`.
    OddGirth { pairs: usize, min_odd_girth: usize, count: usize, seed: u64 },
    Explicit { graphs: Vec<Graph> },
}

impl InstanceFamily {
    /// The instances with stable identifiers.
    pub fn instances(&self) -> Result<Vec<(String, Graph)>> {
        Ok(match self {
            InstanceFamily::AllPerfectMatching { max_pairs } => {
                let mut out = Vec::new();
                for pairs in 1..=*max_pairs {
                    for (i, g) in perfect_matching_graphs(pairs)?.into_iter().enumerate() {
                        out.push((format!("pm{pairs}-{i}"), g));
                    }
                }
                out
            }
            InstanceFamily::RandomPerfectMatching { pairs, p, count, seed } => (0..*count)
                .map(|i| Ok((format!("rpm{pairs}-{i}"), generate_perfect_matching_graph(*pairs, *p, trial_seed(*seed, i as u64))?)))
                .collect::<Result<_>>()?,
            InstanceFamily::OddGirth { pairs, min_odd_girth, count, seed } => (0..*count)
                .map(|i| {
                    let g = generate_odd_girth_graph(*pairs, *min_odd_girth, ODD_GIRTH_ATTEMPTS, trial_seed(*seed, i as u64))?;
                    Ok((format!("og{min_odd_girth}-{pairs}-{i}"), g))
                })
                .collect::<Result<_>>()?,
            InstanceFamily::Explicit { graphs } => {
                graphs.iter().enumerate().map(|(i, g)| (format!("g{i}"), g.clone())).collect()
            }
        })
    }
}

/// How each instance's ratio is obtained.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum Evaluation {
    /// Full enumeration; adversarial kinds take the worst decision order.
    Exact,
    /// Monte-Carlo; adversarial kinds use the identity decision order.
    Sampled { trials: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DominanceRow {
    pub instance_id: String,
    pub algorithm: AlgorithmKind,
    pub ratio: f64,
    pub std_error: f64,
    pub bound: f64,
    /// `ratio − bound`, plus four standard errors when sampled.
    pub margin: f64,
    pub passed: bool,
    /// Decision order used for adversarial kinds.
    pub order: Option<Vec<Vertex>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DominanceReport {
    pub rows: Vec<DominanceRow>,
    pub min_margin: f64,
    pub passed: bool,
}

fn evaluate(id: String, g: &Graph, kind: AlgorithmKind, bound: f64, evaluation: Evaluation) -> Result<DominanceRow> {
    let (estimate, order) = match evaluation {
        Evaluation::Exact if kind.needs_adversarial_order() => {
            let (order, r) = adversarial_order_search(g, kind)?;
            (r, Some(order))
        }
        Evaluation::Exact => (exact_expected_ratio(g, kind, None)?, None),
        Evaluation::Sampled { trials, seed } => {
            let order: Option<Vec<Vertex>> = kind.needs_adversarial_order().then(|| (0..g.vertex_count()).collect());
            (monte_carlo_ratio(g, kind, order.as_deref(), trials, seed)?, order)
        }
    };
    let margin = estimate.mean + 4.0 * estimate.std_error - bound;
    Ok(DominanceRow {
        instance_id: id,
        algorithm: kind,
        ratio: estimate.mean,
        std_error: estimate.std_error,
        bound,
        margin,
        passed: margin >= 0.0,
        order,
    })
}

/// Compares every instance's ratio of `kind` against `bound`.
pub fn check_bound_dominance(
    family: &InstanceFamily,
    kind: AlgorithmKind,
    bound: f64,
    evaluation: Evaluation,
    jobs: usize,
) -> Result<DominanceReport> {
    if !bound.is_finite() {
        return Err(Error::InvalidParameter(format!("bound {bound} is not finite")));
    }
    let instances = family.instances()?;
    let jobs = jobs.clamp(1, instances.len().max(1));
    let chunk = instances.len().div_ceil(jobs).max(1);
    let rows: Vec<DominanceRow> = std::thread::scope(|s| {
        let handles: Vec<_> = instances
            .chunks(chunk)
            .map(|part| {
                s.spawn(move || {
                    part.iter().map(|(id, g)| evaluate(id.clone(), g, kind, bound, evaluation)).collect::<Result<Vec<_>>>()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("dominance worker panicked")).collect::<Result<Vec<_>>>()
    })?
    .into_iter()
    .flatten()
    .collect();
    let min_margin = rows.iter().map(|r| r.margin).fold(f64::INFINITY, f64::min);
    let passed = rows.iter().all(|r| r.passed);
    Ok(DominanceReport { rows, min_margin, passed })
}

#[derive(Serialize)]
struct CsvRecord<'a> {
    instance_id: &'a str,
    algorithm: &'static str,
    ratio: f64,
    std_error: f64,
    bound: f64,
    margin: f64,
}

/// Writes one CSV row per instance with a header line.
pub fn write_csv<W: Write>(rows: &[DominanceRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(CsvRecord {
            instance_id: &r.instance_id,
            algorithm: r.algorithm.name(),
            ratio: r.ratio,
            std_error: r.std_error,
            bound: r.bound,
            margin: r.margin,
        })
        .map_err(|e| Error::InvalidParameter(format!("csv: {e}")))?;
    }
    w.flush().map_err(|e| Error::InvalidParameter(format!("csv: {e}")))
}
