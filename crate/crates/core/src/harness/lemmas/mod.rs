//! Executable structural lemmas: each check runs over seeded random
//! instances and an exhaustive sweep of small perfect-matching graphs, and
//! reports the first failure as a shrunk, replayable witness.

mod checks;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::ratio::trial_seed;
use crate::error::{Error, Result};
use crate::graph::{generate_odd_girth_graph, generate_perfect_matching_graph, perfect_matching_graphs, Graph, Vertex};
use crate::greedy::{franking_list, greedy_match, ranking_list, QueryList, RankVector, Schedule};
use crate::perm::Permutations;
use crate::rng;
use crate::structure::{Analyzer, Context, Engine};

/// How the query list of an instance is generated.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ListSpec {
    Ranking { ranks: Vec<f64> },
    Franking { decision_order: Vec<Vertex>, ranks: Vec<f64> },
    Explicit { pairs: Vec<(Vertex, Vertex)> },
    /// A fully online arrival/deadline schedule with the seed of its rank draws.
    FullyOnline { schedule: Schedule, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum ListKind {
    Ranking,
    Franking,
    Explicit,
    FullyOnline,
}

impl ListSpec {
    fn kind(&self) -> ListKind {
        match self {
            ListSpec::Ranking { .. } => ListKind::Ranking,
            ListSpec::Franking { .. } => ListKind::Franking,
            ListSpec::Explicit { .. } => ListKind::Explicit,
            ListSpec::FullyOnline { .. } => ListKind::FullyOnline,
        }
    }
}

/// A graph together with a list specification.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaInstance {
    pub graph: Graph,
    pub list: ListSpec,
}

impl LemmaInstance {
    pub fn query_list(&self) -> Result<QueryList> {
        match &self.list {
            ListSpec::Ranking { ranks } => Ok(ranking_list(&RankVector::new(ranks.clone())?)),
            ListSpec::Franking { decision_order, ranks } => franking_list(decision_order, &RankVector::new(ranks.clone())?),
            ListSpec::Explicit { pairs } => QueryList::explicit(self.graph.vertex_count(), pairs.clone()),
            ListSpec::FullyOnline { .. } => Err(Error::InvalidParameter("a fully online schedule is not a query list".into())),
        }
    }

    /// Rank vector and insertion context of rank-based lists.
    pub fn ranked(&self) -> Option<(RankVector, Context)> {
        match &self.list {
            ListSpec::Ranking { ranks } => Some((RankVector::new(ranks.clone()).ok()?, Context::Ranking)),
            ListSpec::Franking { decision_order, ranks } => Some((
                RankVector::new(ranks.clone()).ok()?,
                Context::Franking { decision_order: decision_order.clone() },
            )),
            _ => None,
        }
    }

    /// Pairs `(u, u*)` analysed by the profile and threshold checks: the
    /// designated matching in both orientations, or every ordered edge.
    pub fn partner_pairs(&self) -> Vec<(Vertex, Vertex)> {
        let g = &self.graph;
        match g.designated_matching() {
            Some(m) => m.iter().flat_map(|&(a, b)| [(a, b), (b, a)]).collect(),
            None => g.edges().flat_map(|(a, b)| [(a, b), (b, a)]).collect(),
        }
    }
}

type CheckFn = fn(&Analyzer, &LemmaInstance) -> std::result::Result<u64, String>;

struct Check {
    name: &'static str,
    description: &'static str,
    kinds: &'static [ListKind],
    run: CheckFn,
}

use ListKind::{Explicit as E, Franking as F, FullyOnline as O, Ranking as R};

const CHECKS: &[Check] = &[
    Check {
        name: "alternating-path",
        description: "symmetric difference of R(L) and R(L-v) is an alternating path from v with increasing times and one differing available vertex at every time",
        kinds: &[R, F, E],
        run: checks::alternating_path,
    },
    Check {
        name: "worse-off-parity",
        description: "worse off by introducing v iff even index on the path, better off iff odd index",
        kinds: &[R, F, E],
        run: checks::worse_off_parity,
    },
    Check {
        name: "backup-worse-off",
        description: "a worse-off vertex is matched to its backup, or unmatched without one; Ranking backups outrank matches",
        kinds: &[R, F, E],
        run: checks::backup_worse_off,
    },
    Check {
        name: "backups-in-path",
        description: "each interior path vertex has the next path vertex as backup in L (odd) or L-v (even); the last has none",
        kinds: &[R, F, E],
        run: checks::backups_in_path,
    },
    Check {
        name: "blockers-in-path",
        description: "a vertex unmatched by introducing v ends the path at an even index and is the victim of every earlier even vertex",
        kinds: &[R, F, E],
        run: checks::blockers_in_path,
    },
    Check {
        name: "blockers-l-prime",
        description: "an unmatched v preferred over u's backup is the victim of u's match; re-ranked lists make v the victim of every earlier odd path vertex",
        kinds: &[R, F, E],
        run: checks::blockers_l_prime,
    },
    Check {
        name: "ranking-path-monotone",
        description: "ranks increase in steps of two along Ranking paths; rank-based and time-based worse off agree",
        kinds: &[R],
        run: checks::ranking_path_monotone,
    },
    Check {
        name: "ranking-insertion",
        description: "Ranking matching guarantees for an inserted partner, monotone match rank, piecewise constant outcomes",
        kinds: &[R],
        run: checks::ranking_insertion,
    },
    Check {
        name: "profile-monotonicity",
        description: "demoting u's match below its backup (or to any rank without one) leaves the matching unchanged",
        kinds: &[R, F],
        run: checks::profile_monotonicity,
    },
    Check {
        name: "franking-insertion",
        description: "FRanking matching guarantees for an inserted partner and active worse-off scenarios",
        kinds: &[F],
        run: checks::franking_insertion,
    },
    Check {
        name: "six-profiles",
        description: "every FRanking profile falls in one of six classes; Ranking backups outrank matches",
        kinds: &[R, F],
        run: checks::six_profiles,
    },
    Check {
        name: "marginal-split",
        description: "u's marginal rank splits its rank range into a passive prefix and a non-passive suffix",
        kinds: &[F],
        run: checks::marginal_split,
    },
    Check {
        name: "theta-facts",
        description: "impacting rank bounds, third-vertex rank identities and length of length-6 threshold paths",
        kinds: &[R, F],
        run: checks::theta_facts,
    },
    Check {
        name: "odd-girth-path",
        description: "a path returning next to its pivot at even index j closes an odd cycle of length j+1",
        kinds: &[R, F, E],
        run: checks::odd_girth_path,
    },
    Check {
        name: "fully-online",
        description: "Fully-Ranking equals FRanking with deadline order and the same ranks on the effective graph",
        kinds: &[O],
        run: checks::fully_online,
    },
    Check {
        name: "removal-monotone",
        description: "R(L) is maximal, at least half a maximum matching, and no smaller than R(L-v)",
        kinds: &[R, F, E],
        run: checks::removal_monotone,
    },
];

/// Names of all registered checks.
pub fn lemma_names() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.name).collect()
}

fn find(name: &str) -> Result<&'static Check> {
    CHECKS.iter().find(|c| c.name == name).ok_or_else(|| {
        Error::InvalidParameter(format!("unknown lemma check {name:?}; registered: {}", lemma_names().join(", ")))
    })
}

/// Suite parameters.
#[derive(Clone, Copy)]
pub struct SuiteOptions {
    /// Random instances per check.
    pub budget: usize,
    pub seed: u64,
    /// Largest pair count of the exhaustive perfect-matching sweep; 0 disables it.
    pub exhaustive_max_pairs: usize,
    pub engine: Engine,
    /// Worker threads across checks.
    pub jobs: usize,
}

impl SuiteOptions {
    pub fn new(budget: usize, seed: u64) -> Self {
        SuiteOptions { budget, seed, exhaustive_max_pairs: 3, engine: greedy_match, jobs: 1 }
    }
}

/// First failure of a check, with everything needed to replay it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaWitness {
    pub check: String,
    pub message: String,
    pub seed: u64,
    pub instance_index: usize,
    /// `random` or `exhaustive`.
    pub origin: String,
    pub instance: LemmaInstance,
    pub graph_text: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub description: String,
    pub instances: u64,
    pub assertions: u64,
    pub failures: u64,
    pub witness: Option<LemmaWitness>,
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub seed: u64,
    pub budget: usize,
    pub checks: Vec<CheckReport>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failures == 0)
    }

    pub fn failures(&self) -> u64 {
        self.checks.iter().map(|c| c.failures).sum()
    }
}

fn name_seed(seed: u64, name: &str) -> u64 {
    // FNV-1a keeps per-check streams stable when checks are added.
    let h = name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3));
    trial_seed(seed, h)
}

fn random_graph(rng: &mut rng::Rng) -> Result<Graph> {
    match rng.random_range(0..10) {
        0..5 => {
            let n = rng.random_range(2..=10);
            let p = rng.random_range(0.2..0.7);
            let mut edges = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    if rng.random_bool(p) {
                        edges.push((a, b));
                    }
                }
            }
            Graph::new(n, edges)
        }
        5..8 => {
            let pairs = rng.random_range(1..=5);
            let p = rng.random_range(0.1..0.6);
            generate_perfect_matching_graph(pairs, p, rng.random())
        }
        _ => {
            let pairs = rng.random_range(2..=5);
            generate_odd_girth_graph(pairs, 5, 200, rng.random())
        }
    }
}

fn shuffled(n: usize, rng: &mut rng::Rng) -> Vec<Vertex> {
    let mut v: Vec<Vertex> = (0..n).collect();
    v.shuffle(rng);
    v
}

fn random_list(kind: ListKind, n: usize, rng: &mut rng::Rng) -> ListSpec {
    match kind {
        ListKind::Ranking => ListSpec::Ranking { ranks: RankVector::sample(n, rng).as_slice().to_vec() },
        ListKind::Franking => {
            let decision_order = shuffled(n, rng);
            ListSpec::Franking { decision_order, ranks: RankVector::sample(n, rng).as_slice().to_vec() }
        }
        ListKind::Explicit => {
            let mut pairs: Vec<(Vertex, Vertex)> =
                (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect();
            pairs.shuffle(rng);
            ListSpec::Explicit { pairs }
        }
        ListKind::FullyOnline => ListSpec::FullyOnline { schedule: Schedule::random(n, rng), seed: rng.random() },
    }
}

fn random_instance(check: &Check, seed: u64, i: usize) -> Result<LemmaInstance> {
    let mut rng = rng::split(seed, i as u64);
    let graph = random_graph(&mut rng)?;
    let kind = check.kinds[i % check.kinds.len()];
    let list = random_list(kind, graph.vertex_count(), &mut rng);
    Ok(LemmaInstance { graph, list })
}

/// Lists per graph in the exhaustive sweep for kinds without a full enumeration.
const SEEDED_LISTS_PER_GRAPH: usize = 16;

fn exhaustive_instances(check: &Check, seed: u64, max_pairs: usize) -> Result<Vec<LemmaInstance>> {
    let mut out = Vec::new();
    let mut rng = rng::split(seed, u64::MAX - 1);
    for pairs in 1..=max_pairs {
        for graph in perfect_matching_graphs(pairs)? {
            let n = graph.vertex_count();
            for &kind in check.kinds {
                let mut push = |list| out.push(LemmaInstance { graph: graph.clone(), list });
                match kind {
                    ListKind::Ranking => {
                        for order in Permutations::new(n) {
                            push(ListSpec::Ranking { ranks: RankVector::from_order(&order)?.as_slice().to_vec() });
                        }
                    }
                    ListKind::Franking => {
                        let identity: Vec<Vertex> = (0..n).collect();
                        let reverse: Vec<Vertex> = (0..n).rev().collect();
                        for pi in [identity, reverse, shuffled(n, &mut rng)] {
                            for sigma in Permutations::new(n) {
                                let ranks = RankVector::from_order(&sigma)?.as_slice().to_vec();
                                push(ListSpec::Franking { decision_order: pi.clone(), ranks });
                            }
                        }
                    }
                    ListKind::Explicit | ListKind::FullyOnline => {
                        for _ in 0..SEEDED_LISTS_PER_GRAPH {
                            push(random_list(kind, n, &mut rng));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

fn evaluate(check: &Check, engine: Engine, inst: &LemmaInstance) -> std::result::Result<u64, String> {
    let a = Analyzer::with_engine(&inst.graph, engine);
    match catch_unwind(AssertUnwindSafe(|| (check.run)(&a, inst))) {
        Ok(r) => r,
        Err(p) => Err(format!(
            "panic: {}",
            p.downcast_ref::<String>().map(String::as_str).or(p.downcast_ref::<&str>().copied()).unwrap_or("unknown")
        )),
    }
}

fn without_edge(g: &Graph, e: (Vertex, Vertex)) -> Graph {
    let h = Graph::new(g.vertex_count(), g.edges().filter(|&f| f != e)).expect("subgraph of a valid graph");
    match g.designated_matching() {
        Some(m) => h.with_matching(m.to_vec()).expect("matching edges are kept"),
        None => h,
    }
}

/// Deletes non-matching edges one at a time while the check keeps failing.
fn shrink(check: &Check, engine: Engine, mut inst: LemmaInstance, mut message: String) -> (LemmaInstance, String) {
    loop {
        let protected: BTreeSet<(Vertex, Vertex)> = inst
            .graph
            .designated_matching()
            .map(|m| m.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect())
            .unwrap_or_default();
        let mut progressed = false;
        for e in inst.graph.edges().filter(|e| !protected.contains(e)).collect::<Vec<_>>() {
            let candidate = LemmaInstance { graph: without_edge(&inst.graph, e), list: inst.list.clone() };
            if let Err(m) = evaluate(check, engine, &candidate) {
                inst = candidate;
                message = m;
                progressed = true;
                break;
            }
        }
        if !progressed {
            return (inst, message);
        }
    }
}

/// Runs one check over its random and exhaustive instances.
pub fn run_check(name: &str, opts: &SuiteOptions) -> Result<CheckReport> {
    let check = find(name)?;
    let start = Instant::now();
    let seed = name_seed(opts.seed, check.name);
    let mut report = CheckReport {
        name: check.name.into(),
        description: check.description.into(),
        instances: 0,
        assertions: 0,
        failures: 0,
        witness: None,
        seconds: 0.0,
    };
    let record = |inst: LemmaInstance, index: usize, origin: &str, report: &mut CheckReport| {
        report.instances += 1;
        match evaluate(check, opts.engine, &inst) {
            Ok(n) => report.assertions += n,
            Err(message) => {
                report.failures += 1;
                if report.witness.is_none() {
                    let (inst, message) = shrink(check, opts.engine, inst, message);
                    log::warn!("{}: {message}", check.name);
                    report.witness = Some(LemmaWitness {
                        check: check.name.into(),
                        message,
                        seed: opts.seed,
                        instance_index: index,
                        origin: origin.into(),
                        graph_text: inst.graph.to_text(),
                        instance: inst,
                    });
                }
            }
        }
    };
    for i in 0..opts.budget {
        let inst = random_instance(check, seed, i)?;
        record(inst, i, "random", &mut report);
    }
    for (i, inst) in exhaustive_instances(check, seed, opts.exhaustive_max_pairs)?.into_iter().enumerate() {
        record(inst, i, "exhaustive", &mut report);
    }
    report.seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

/// Runs the named checks with explicit options. Unknown names are rejected
/// before any work starts.
pub fn lemma_suite_with(names: &[&str], opts: &SuiteOptions) -> Result<LemmaReport> {
    for n in names {
        find(n)?;
    }
    let jobs = opts.jobs.clamp(1, names.len().max(1));
    let mut checks: Vec<Option<Result<CheckReport>>> = (0..names.len()).map(|_| None).collect();
    std::thread::scope(|s| {
        let slots: Vec<_> = checks.chunks_mut(names.len().div_ceil(jobs).max(1)).collect();
        let mut offset = 0;
        for slot in slots {
            let start = offset;
            offset += slot.len();
            s.spawn(move || {
                for (k, out) in slot.iter_mut().enumerate() {
                    *out = Some(run_check(names[start + k], opts));
                }
            });
        }
    });
    let checks = checks.into_iter().map(|c| c.expect("every slot is filled")).collect::<Result<Vec<_>>>()?;
    Ok(LemmaReport { seed: opts.seed, budget: opts.budget, checks })
}

/// Runs the named checks with `budget` random instances each plus the
/// exhaustive sweep. An empty name set gives an empty report.
pub fn lemma_suite(names: &[&str], budget: usize, seed: u64) -> Result<LemmaReport> {
    lemma_suite_with(names, &SuiteOptions::new(budget, seed))
}

/// Re-runs a witness; `Ok(Err(message))` if it still fails.
pub fn replay_witness(w: &LemmaWitness, engine: Engine) -> Result<std::result::Result<u64, String>> {
    let check = find(&w.check)?;
    if !check.kinds.contains(&w.instance.list.kind()) {
        return Err(Error::InvalidParameter(format!("check {} does not apply to this list kind", check.name)));
    }
    Ok(evaluate(check, engine, &w.instance))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::greedy::{MatchingTrace, Order};

    #[test]
    fn empty_name_set() {
        let r = lemma_suite(&[], 10, 1).unwrap();
        assert!(r.checks.is_empty());
        assert!(r.passed());
    }

    #[test]
    fn unknown_name_lists_registered() {
        let e = lemma_suite(&["no-such-lemma"], 10, 1).unwrap_err().to_string();
        assert!(e.contains("alternating-path") && e.contains("fully-online"), "{e}");
    }

    #[test]
    fn names_are_unique() {
        let names = lemma_names();
        let set: BTreeSet<_> = names.iter().collect();
        assert_eq!(set.len(), names.len());
        assert_eq!(names.len(), 16);
    }

    #[test]
    fn every_check_passes_small_budget() {
        let mut opts = SuiteOptions::new(30, 5);
        opts.exhaustive_max_pairs = 2;
        let r = lemma_suite_with(&lemma_names(), &opts).unwrap();
        for c in &r.checks {
            assert_eq!(c.failures, 0, "{}: {:?}", c.name, c.witness);
            assert!(c.assertions > 0, "{} made no assertions", c.name);
        }
    }

    #[test]
    fn instance_generation_is_deterministic() {
        let c = find("theta-facts").unwrap();
        for i in 0..20 {
            assert_eq!(random_instance(c, 9, i).unwrap(), random_instance(c, 9, i).unwrap());
        }
    }

    // Takes every edge whose endpoints are not excluded, ignoring earlier matches.
    fn careless_engine(g: &Graph, list: &QueryList) -> MatchingTrace {
        let n = g.vertex_count();
        let explicit = list.to_explicit();
        let Order::Explicit { pairs } = explicit.order() else { unreachable!() };
        let mut mate = vec![None; n];
        let mut out = Vec::new();
        for (t, &(u, v)) in pairs.iter().enumerate() {
            if g.has_edge(u, v) && !list.is_excluded(u) && !list.is_excluded(v) && mate[u].is_none() {
                mate[u] = Some(v);
                mate[v] = Some(u);
                out.push(crate::greedy::MatchedPair { time: t, active: u, passive: v });
            }
        }
        MatchingTrace::from_pairs(n, &out, list.excluded())
    }

    #[test]
    fn corrupted_engine_is_caught_with_replayable_witness() {
        let mut opts = SuiteOptions::new(40, 7);
        opts.engine = careless_engine;
        opts.exhaustive_max_pairs = 0;
        let r = run_check("alternating-path", &opts).unwrap();
        assert!(r.failures > 0);
        let w = r.witness.unwrap();
        assert!(replay_witness(&w, careless_engine).unwrap().is_err());
        assert!(replay_witness(&w, greedy_match).unwrap().is_ok());
        let json = serde_json::to_string(&w).unwrap();
        let back: LemmaWitness = serde_json::from_str(&json).unwrap();
        assert_eq!(back, w);
    }
}
