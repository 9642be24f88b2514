use serde::{Deserialize, Serialize};

use super::path::AlternatingPath;
use super::Analyzer;
use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::greedy::{check_permutation, franking_list, ranking_list, MatchingTrace, QueryList, RankVector};

/// Order family in which a vertex is inserted at a varying rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Context {
    Ranking,
    /// FRanking with a fixed decision order; only ranks vary.
    Franking { decision_order: Vec<Vertex> },
}

impl Context {
    pub fn list(&self, x: &RankVector) -> Result<QueryList> {
        match self {
            Context::Ranking => Ok(ranking_list(x)),
            Context::Franking { decision_order } => franking_list(decision_order, x),
        }
    }
}

/// Outcome while the inserted vertex's rank lies in `(lo, hi)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InsertionOutcome {
    pub lo: f64,
    pub hi: f64,
    /// Representative rank: the midpoint.
    pub x: f64,
    pub ranks: RankVector,
    pub list: QueryList,
    /// Run with the inserted vertex present.
    pub trace: MatchingTrace,
    /// Run over the same list with the inserted vertex excluded.
    pub reference: MatchingTrace,
}

/// A realized interval just below a threshold.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub lo: f64,
    pub hi: f64,
    pub x: f64,
    /// Alternating path of the inserted vertex at the representative rank.
    pub path: AlternatingPath,
}

/// Per-interval summary used in reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntervalSummary {
    pub lo: f64,
    pub hi: f64,
    pub x: f64,
    pub u_worse_off: bool,
    pub inserted_mate: Option<Vertex>,
    pub inserted_passive: bool,
    pub path_len: usize,
}

/// The rank thresholds of `u` with respect to the inserted vertex `u*`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub u: Vertex,
    pub ustar: Vertex,
    /// Whether u is matched with `u*` excluded.
    pub u_matched_without_ustar: bool,
    /// Supremum of insertion ranks making u worse off.
    pub theta0: f64,
    /// Supremum of insertion ranks at which `u*` is matched passively.
    pub theta1: f64,
    /// Supremum of insertion ranks making u worse off with the vertex two
    /// steps before u on the path ranked above `theta0`.
    pub theta3: f64,
    pub witness0: Option<Witness>,
    pub witness1: Option<Witness>,
    pub witness3: Option<Witness>,
    pub intervals: Vec<IntervalSummary>,
}

impl Analyzer<'_> {
    /// Outcomes of inserting `ustar` at every rank, one per open interval
    /// between consecutive ranks of the other vertices (and 0 and 1). Vertices
    /// in `excluded` stay unavailable throughout.
    pub fn insertion_outcomes(
        &self,
        base_x: &RankVector,
        ustar: Vertex,
        context: &Context,
        excluded: &[Vertex],
    ) -> Result<Vec<InsertionOutcome>> {
        let n = base_x.len();
        if ustar >= n || n != self.graph.vertex_count() {
            return Err(Error::InvalidParameter("rank vector and graph sizes differ".into()));
        }
        if let Context::Franking { decision_order } = context {
            check_permutation(decision_order, n)?;
        }
        let mut cuts: Vec<f64> = (0..n).filter(|&w| w != ustar).map(|w| base_x.get(w)).collect();
        cuts.push(0.0);
        cuts.push(1.0);
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let mut out = Vec::with_capacity(cuts.len());
        for w in cuts.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            let x = 0.5 * (lo + hi);
            let ranks = base_x.with_rank(ustar, x)?;
            let list = context.list(&ranks)?.exclude(excluded)?;
            let trace = self.run(&list);
            let reference = self.run(&list.exclude(&[ustar])?);
            out.push(InsertionOutcome { lo, hi, x, ranks, list, trace, reference });
        }
        Ok(out)
    }

    /// θ₀, θ₁ and θ₃ of `u` with respect to `ustar`, from the insertion outcomes.
    pub fn thresholds(&self, base_x: &RankVector, u: Vertex, ustar: Vertex, context: &Context) -> Result<ThresholdReport> {
        self.thresholds_excluding(base_x, u, ustar, context, &[])
    }

    /// [`Analyzer::thresholds`] with additional vertices excluded throughout.
    pub fn thresholds_excluding(
        &self,
        base_x: &RankVector,
        u: Vertex,
        ustar: Vertex,
        context: &Context,
        excluded: &[Vertex],
    ) -> Result<ThresholdReport> {
        if u == ustar {
            return Err(Error::Precondition("u and u* must differ".into()));
        }
        let outcomes = self.insertion_outcomes(base_x, ustar, context, excluded)?;
        let u_matched = outcomes.first().is_some_and(|o| o.reference.is_matched(u));
        let mut report = ThresholdReport {
            u,
            ustar,
            u_matched_without_ustar: u_matched,
            theta0: 0.0,
            theta1: 0.0,
            theta3: 0.0,
            witness0: None,
            witness1: None,
            witness3: None,
            intervals: Vec::with_capacity(outcomes.len()),
        };
        let mut paths = Vec::with_capacity(outcomes.len());
        for o in &outcomes {
            let path = self.path_from_runs(&o.trace, &o.reference, ustar)?;
            let worse = u_matched && o.trace.worse_off_than(&o.reference, u);
            let passive = o.trace.is_matched(ustar) && !o.trace.is_active(ustar);
            let witness = || Witness { lo: o.lo, hi: o.hi, x: o.x, path: path.clone() };
            if worse {
                report.theta0 = o.hi;
                report.witness0 = Some(witness());
            }
            if passive {
                report.theta1 = o.hi;
                report.witness1 = Some(witness());
            }
            report.intervals.push(IntervalSummary {
                lo: o.lo,
                hi: o.hi,
                x: o.x,
                u_worse_off: worse,
                inserted_mate: o.trace.mate(ustar),
                inserted_passive: passive,
                path_len: path.len(),
            });
            paths.push(path);
        }
        let worse: Vec<bool> = report.intervals.iter().map(|s| s.u_worse_off).collect();
        for ((o, path), _) in outcomes.iter().zip(&paths).zip(&worse).filter(|(_, &w)| w) {
            let j = path.index_of(u).filter(|j| j % 2 == 0 && *j >= 2).ok_or_else(|| {
                Error::StructuralViolation(format!("worse-off u = {u} not at an even position of the path {:?}", path.vertices))
            })?;
            if o.ranks.get(path.vertices[j - 2]) > report.theta0 {
                report.theta3 = o.hi;
                report.witness3 = Some(Witness { lo: o.lo, hi: o.hi, x: o.x, path: path.clone() });
            }
        }
        Ok(report)
    }

    /// Marginal rank of `u` with `ustar` excluded: the supremum of u's
    /// insertion ranks at which u is matched passively.
    pub fn marginal_rank(&self, base_x: &RankVector, u: Vertex, ustar: Vertex, context: &Context) -> Result<f64> {
        let outcomes = self.insertion_outcomes(base_x, u, context, &[ustar])?;
        Ok(outcomes
            .iter()
            .filter(|o| o.trace.is_matched(u) && !o.trace.is_active(u))
            .map(|o| o.hi)
            .fold(0.0, f64::max))
    }
}
