use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::ranks::check_keys;
use crate::error::{Error, Result};
use crate::graph::Vertex;

/// Preference of a deciding vertex over its candidate partners; lower key first.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Preference {
    /// One key per vertex, shared by all deciders.
    Common(Vec<f64>),
    /// `keys[u][v]` is u's key for v; the diagonal is ignored.
    PerVertex(Vec<Vec<f64>>),
}

/// Generating data of the total order over ordered pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Order {
    /// Pairs `(u, v)` sorted by (decision key of u, u's preference key for v).
    VertexIterative { decision: Vec<f64>, preference: Preference },
    /// Every ordered pair of distinct vertices, listed once.
    Explicit { pairs: Vec<(Vertex, Vertex)> },
}

/// Total order over ordered vertex pairs plus vertices marked unavailable
/// from the start. Excluding vertices never reorders the remaining pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QueryList {
    vertex_count: usize,
    order: Order,
    excluded: Vec<Vertex>,
    #[serde(skip)]
    cache: Cache,
}

#[derive(Clone, Debug, Default)]
struct Cache {
    // position of each vertex in the decision order (vertex-iterative)
    decision_position: Vec<usize>,
    // list position of each ordered pair, row-major (explicit)
    pair_position: Vec<usize>,
    excluded_mask: Vec<bool>,
}

impl PartialEq for Cache {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

fn positions(keys: &[f64]) -> Vec<usize> {
    let mut vs: Vec<usize> = (0..keys.len()).collect();
    vs.sort_by(|&a, &b| keys[a].total_cmp(&keys[b]));
    let mut pos = vec![0; keys.len()];
    for (i, v) in vs.into_iter().enumerate() {
        pos[v] = i;
    }
    pos
}

impl QueryList {
    /// Vertex-iterative list: deciders in increasing `decision` key, each
    /// ranking partners by `preference`.
    pub fn vertex_iterative(decision: Vec<f64>, preference: Preference) -> Result<Self> {
        let n = decision.len();
        check_keys(&decision, "decision keys")?;
        match &preference {
            Preference::Common(keys) => {
                if keys.len() != n {
                    return Err(Error::InvalidParameter("preference length differs from decision length".into()));
                }
                check_keys(keys, "preference keys")?;
            }
            Preference::PerVertex(rows) => {
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(Error::InvalidParameter("per-vertex preference must be n × n".into()));
                }
                for (u, row) in rows.iter().enumerate() {
                    let others: Vec<f64> = (0..n).filter(|&w| w != u).map(|w| row[w]).collect();
                    check_keys(&others, "per-vertex preference keys")?;
                }
            }
        }
        Self::assemble(n, Order::VertexIterative { decision, preference }, Vec::new())
    }

    /// Explicit list over all `n·(n−1)` ordered pairs.
    pub fn explicit(vertex_count: usize, pairs: Vec<(Vertex, Vertex)>) -> Result<Self> {
        let n = vertex_count;
        if pairs.len() != n * n.saturating_sub(1) {
            return Err(Error::InvalidParameter(format!(
                "explicit list has {} pairs, expected {}",
                pairs.len(),
                n * n.saturating_sub(1)
            )));
        }
        let mut seen = vec![false; n * n];
        for &(u, v) in &pairs {
            if u >= n || v >= n || u == v || std::mem::replace(&mut seen[u * n + v], true) {
                return Err(Error::InvalidParameter(format!("pair ({u},{v}) invalid or repeated")));
            }
        }
        Self::assemble(n, Order::Explicit { pairs }, Vec::new())
    }

    fn assemble(vertex_count: usize, order: Order, excluded: Vec<Vertex>) -> Result<Self> {
        let n = vertex_count;
        let mut cache = Cache { excluded_mask: vec![false; n], ..Cache::default() };
        for &v in &excluded {
            if v >= n {
                return Err(Error::InvalidParameter(format!("excluded vertex {v} out of range")));
            }
            cache.excluded_mask[v] = true;
        }
        match &order {
            Order::VertexIterative { decision, .. } => cache.decision_position = positions(decision),
            Order::Explicit { pairs } => {
                cache.pair_position = vec![usize::MAX; n * n];
                for (i, &(u, v)) in pairs.iter().enumerate() {
                    cache.pair_position[u * n + v] = i;
                }
            }
        }
        Ok(QueryList { vertex_count, order, excluded, cache })
    }

    /// Rebuilds derived indices, e.g. after deserialization.
    pub fn validated(self) -> Result<Self> {
        match self.order {
            Order::VertexIterative { decision, preference } => {
                Self::vertex_iterative(decision, preference)?.exclude(&self.excluded)
            }
            Order::Explicit { pairs } => Self::explicit(self.vertex_count, pairs)?.exclude(&self.excluded),
        }
    }

    /// Same order, exclusion set enlarged by `vertices`.
    pub fn exclude(&self, vertices: &[Vertex]) -> Result<Self> {
        let mut excluded = self.excluded.clone();
        for &v in vertices {
            if !excluded.contains(&v) {
                excluded.push(v);
            }
        }
        excluded.sort_unstable();
        Self::assemble(self.vertex_count, self.order.clone(), excluded)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn order(&self) -> &Order {
        &self.order
    }

    pub fn is_excluded(&self, v: Vertex) -> bool {
        self.cache.excluded_mask[v]
    }

    /// Excluded vertices in increasing order.
    pub fn excluded(&self) -> &[Vertex] {
        &self.excluded
    }

    /// Deciders in decision order, for vertex-iterative lists.
    pub fn decision_order(&self) -> Option<Vec<Vertex>> {
        match &self.order {
            Order::VertexIterative { .. } => {
                let mut vs = vec![0; self.vertex_count];
                for (v, &p) in self.cache.decision_position.iter().enumerate() {
                    vs[p] = v;
                }
                Some(vs)
            }
            Order::Explicit { .. } => None,
        }
    }

    /// u's preference key for v, for vertex-iterative lists.
    pub fn preference_key(&self, u: Vertex, v: Vertex) -> Option<f64> {
        match &self.order {
            Order::VertexIterative { preference: Preference::Common(keys), .. } => Some(keys[v]),
            Order::VertexIterative { preference: Preference::PerVertex(rows), .. } => Some(rows[u][v]),
            Order::Explicit { .. } => None,
        }
    }

    /// Position of the ordered pair `(u, v)` in the list.
    pub fn time(&self, u: Vertex, v: Vertex) -> usize {
        debug_assert!(u != v);
        let n = self.vertex_count;
        match &self.order {
            Order::VertexIterative { .. } => {
                let key = self.preference_key(u, v).unwrap();
                let before = (0..n)
                    .filter(|&w| w != u && w != v)
                    .filter(|&w| self.preference_key(u, w).unwrap() < key)
                    .count();
                self.cache.decision_position[u] * (n - 1) + before
            }
            Order::Explicit { .. } => self.cache.pair_position[u * n + v],
        }
    }

    /// Earliest position of the unordered pair `{u, v}`.
    pub fn pair_time(&self, u: Vertex, v: Vertex) -> usize {
        self.time(u, v).min(self.time(v, u))
    }

    /// Compares two ordered pairs by list position.
    pub fn compare(&self, a: (Vertex, Vertex), b: (Vertex, Vertex)) -> Ordering {
        self.time(a.0, a.1).cmp(&self.time(b.0, b.1))
    }

    /// All ordered pairs in list order.
    pub fn materialize(&self) -> Vec<(Vertex, Vertex)> {
        match &self.order {
            Order::Explicit { pairs } => pairs.clone(),
            Order::VertexIterative { .. } => {
                let n = self.vertex_count;
                let mut out = Vec::with_capacity(n * n.saturating_sub(1));
                for u in self.decision_order().unwrap() {
                    let mut others: Vec<Vertex> = (0..n).filter(|&w| w != u).collect();
                    others.sort_by(|&a, &b| {
                        self.preference_key(u, a).unwrap().total_cmp(&self.preference_key(u, b).unwrap())
                    });
                    out.extend(others.into_iter().map(|w| (u, w)));
                }
                out
            }
        }
    }

    /// Explicit copy of this list with the same exclusions.
    pub fn to_explicit(&self) -> Self {
        Self::explicit(self.vertex_count, self.materialize())
            .and_then(|l| l.exclude(&self.excluded))
            .expect("materialized list is a total order")
    }
}

/// Free-function form of [`QueryList::exclude`].
pub fn exclude(list: &QueryList, vertices: &[Vertex]) -> Result<QueryList> {
    list.exclude(vertices)
}
