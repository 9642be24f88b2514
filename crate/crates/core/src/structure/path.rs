use serde::{Deserialize, Serialize};

use super::Analyzer;
use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::greedy::{MatchingTrace, QueryList};

/// Symmetric difference of `R(L)` and `R(L₋ᵥ)` as a path `u₀ = v, u₁, …, u_k`.
///
/// Edge `(u_i, u_{i+1})` belongs to `R(L)` for even `i` and to `R(L₋ᵥ)` for odd `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlternatingPath {
    pub vertices: Vec<Vertex>,
    /// Query time of each edge in the run it belongs to.
    pub edge_times: Vec<usize>,
}

impl AlternatingPath {
    /// Number of edges.
    pub fn len(&self) -> usize {
        self.edge_times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_times.is_empty()
    }

    pub fn last(&self) -> Vertex {
        *self.vertices.last().unwrap()
    }

    pub fn index_of(&self, u: Vertex) -> Option<usize> {
        self.vertices.iter().position(|&w| w == u)
    }

    /// Whether edge `i` belongs to the run with the pivot present.
    pub fn edge_in_full_run(i: usize) -> bool {
        i % 2 == 0
    }
}

/// Both runs behind an alternating path.
#[derive(Clone, Debug)]
pub struct PathRuns {
    pub path: AlternatingPath,
    pub with: MatchingTrace,
    pub without: MatchingTrace,
}

impl Analyzer<'_> {
    /// Alternating path of pivot `v` from two given runs, `with` over `L`
    /// and `without` over `L₋ᵥ`.
    pub fn path_from_runs(&self, with: &MatchingTrace, without: &MatchingTrace, v: Vertex) -> Result<AlternatingPath> {
        let mut vertices = vec![v];
        let mut edge_times = Vec::new();
        loop {
            let i = vertices.len() - 1;
            let cur = vertices[i];
            let (this, other) = if i % 2 == 0 { (with, without) } else { (without, with) };
            let Some(next) = this.mate(cur) else { break };
            if other.mate(cur) == Some(next) {
                break;
            }
            if vertices.contains(&next) {
                return Err(Error::StructuralViolation(format!(
                    "symmetric difference for pivot {v} closes a cycle at {next}"
                )));
            }
            vertices.push(next);
            edge_times.push(this.match_time(cur).unwrap());
        }
        let differing = (0..with.vertex_count()).filter(|&w| with.mate(w) != without.mate(w)).count();
        if differing != vertices.len() && !(vertices.len() == 1 && differing == 0) {
            return Err(Error::StructuralViolation(format!(
                "symmetric difference for pivot {v} is not a single path from it: path {vertices:?}, {differing} vertices differ"
            )));
        }
        Ok(AlternatingPath { vertices, edge_times })
    }

    /// Runs `L` and `L₋ᵥ` and extracts the alternating path of `v`.
    pub fn alternating_path_runs(&self, list: &QueryList, v: Vertex) -> Result<PathRuns> {
        if list.is_excluded(v) {
            return Err(Error::Precondition(format!("pivot {v} is excluded")));
        }
        let with = self.run(list);
        let without = self.run(&list.exclude(&[v])?);
        let path = self.path_from_runs(&with, &without, v)?;
        Ok(PathRuns { path, with, without })
    }

    pub fn alternating_path(&self, list: &QueryList, v: Vertex) -> Result<AlternatingPath> {
        self.alternating_path_runs(list, v).map(|r| r.path)
    }

    /// u's match in `R(L₋ᵥ)`, where `v` is u's match in `R(L)`.
    pub fn backup_of(&self, list: &QueryList, u: Vertex) -> Result<Option<Vertex>> {
        let Some(v) = self.run(list).mate(u) else { return Ok(None) };
        Ok(self.run(&list.exclude(&[v])?).mate(u))
    }

    /// Vertices `w` whose exclusion lets an unmatched `u` be matched.
    pub fn blockers_of(&self, list: &QueryList, u: Vertex) -> Result<Vec<Vertex>> {
        if self.run(list).is_matched(u) {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for w in 0..self.graph.vertex_count() {
            if w != u && !list.is_excluded(w) && self.run(&list.exclude(&[w])?).is_matched(u) {
                out.push(w);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::greedy::{ranking_list, RankVector};

    fn list(order: &[usize]) -> QueryList {
        ranking_list(&RankVector::from_order(order).unwrap())
    }

    #[test]
    fn isolated_pivot_is_degenerate() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        let p = Analyzer::new(&g).alternating_path(&list(&[0, 1, 2]), 2).unwrap();
        assert_eq!(p.vertices, vec![2]);
        assert!(p.is_empty());
    }

    #[test]
    fn removing_pivot_frees_partner() {
        // u=0, v=1, w=2; edges u-v and v-w; v prefers u.
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let l = list(&[1, 0, 2]);
        let p = Analyzer::new(&g).alternating_path(&l, 1).unwrap();
        assert_eq!(p.vertices, vec![1, 0]);
    }

    #[test]
    fn path_alternates_on_p4() {
        // a-b-c-d with b first choosing c; pivot b.
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let l = list(&[1, 2, 0, 3]);
        let p = Analyzer::new(&g).alternating_path(&l, 1).unwrap();
        assert_eq!(p.vertices, vec![1, 2, 3]);
        assert!(p.edge_times[0] < p.edge_times[1]);
    }

    #[test]
    fn backup_examples() {
        let edge = Graph::new(2, [(0, 1)]).unwrap();
        assert_eq!(Analyzer::new(&edge).backup_of(&list(&[0, 1]), 0).unwrap(), None);
        let tri = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(Analyzer::new(&tri).backup_of(&list(&[0, 1, 2]), 0).unwrap(), Some(2));
    }

    #[test]
    fn blocker_examples() {
        // w=0 - v=1, u=2 adjacent to v; w takes v first.
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let l = list(&[0, 1, 2]);
        let a = Analyzer::new(&g);
        assert_eq!(a.blockers_of(&l, 2).unwrap(), vec![0]);
        assert!(a.blockers_of(&l, 0).unwrap().is_empty());
    }
}
