//! Undirected simple graphs with an optional designated perfect matching.

mod enumerate;
mod generate;
mod queries;

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{parse_err, Error, Result};

pub use enumerate::{all_graphs, perfect_matching_graphs};
pub use generate::{generate_odd_girth_graph, generate_perfect_matching_graph};
pub use queries::{
    maximum_matching, maximum_matching_size, odd_girth, prune_to_perfect_matching, ORACLE_LIMIT,
};

/// Vertex index.
pub type Vertex = usize;

/// Undirected simple graph on vertices `0..vertex_count`.
///
/// Edges are kept both as an ordered set of `(min, max)` pairs and as sorted
/// adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphData", into = "GraphData")]
pub struct Graph {
    vertex_count: usize,
    edges: BTreeSet<(Vertex, Vertex)>,
    adjacency: Vec<Vec<Vertex>>,
    matching: Option<Vec<(Vertex, Vertex)>>,
}

#[derive(Serialize, Deserialize)]
struct GraphData {
    vertex_count: usize,
    edges: Vec<(Vertex, Vertex)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    perfect_matching: Option<Vec<(Vertex, Vertex)>>,
}

impl TryFrom<GraphData> for Graph {
    type Error = Error;
    fn try_from(d: GraphData) -> Result<Self> {
        let g = Graph::new(d.vertex_count, d.edges)?;
        match d.perfect_matching {
            Some(m) => g.with_matching(m),
            None => Ok(g),
        }
    }
}

impl From<Graph> for GraphData {
    fn from(g: Graph) -> Self {
        GraphData {
            vertex_count: g.vertex_count,
            edges: g.edges.into_iter().collect(),
            perfect_matching: g.matching,
        }
    }
}

fn norm(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and out-of-range endpoints.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u},{v}) out of range for {vertex_count} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            if !set.insert(norm(u, v)) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({u},{v})")));
            }
        }
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in &set {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph { vertex_count, edges: set, adjacency, matching: None })
    }

    /// Graph without edges.
    pub fn empty(vertex_count: usize) -> Self {
        Graph {
            vertex_count,
            edges: BTreeSet::new(),
            adjacency: vec![Vec::new(); vertex_count],
            matching: None,
        }
    }

    /// Attaches a designated perfect matching after validating it.
    pub fn with_matching(mut self, pairs: Vec<(Vertex, Vertex)>) -> Result<Self> {
        let mut covered = vec![false; self.vertex_count];
        for &(u, v) in &pairs {
            if !self.has_edge(u, v) {
                return Err(Error::InvalidGraph(format!("matching pair ({u},{v}) is not an edge")));
            }
            for w in [u, v] {
                if std::mem::replace(&mut covered[w], true) {
                    return Err(Error::InvalidGraph(format!("vertex {w} covered twice by matching")));
                }
            }
        }
        if let Some(w) = covered.iter().position(|c| !c) {
            return Err(Error::InvalidGraph(format!("vertex {w} not covered by matching")));
        }
        self.matching = Some(pairs);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(min, max)` pairs in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u != v && self.edges.contains(&norm(u, v))
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn designated_matching(&self) -> Option<&[(Vertex, Vertex)]> {
        self.matching.as_deref()
    }

    /// Partner of `v` in the designated matching.
    pub fn designated_partner(&self, v: Vertex) -> Option<Vertex> {
        self.matching.as_ref()?.iter().find_map(|&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }

    /// Neighbor bitmasks; requires at most 64 vertices.
    pub fn adjacency_masks(&self) -> Vec<u64> {
        assert!(self.vertex_count <= 64, "bitmask view needs at most 64 vertices");
        self.adjacency
            .iter()
            .map(|ns| ns.iter().fold(0u64, |m, &w| m | (1 << w)))
            .collect()
    }

    /// Subgraph induced by `vertices`, relabelled `0..len` in the given order.
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> Graph {
        let mut index = vec![usize::MAX; self.vertex_count];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges()
            .filter(|&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|(u, v)| (index[u], index[v]));
        Graph::new(vertices.len(), edges).expect("induced subgraph of a valid graph is valid")
    }

    /// Copy with the designated matching removed.
    pub fn without_matching(&self) -> Graph {
        Graph { matching: None, ..self.clone() }
    }

    /// Writes the `p`/`e`/`m` text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("p {} {}\n", self.vertex_count, self.edges.len());
        for (u, v) in self.edges() {
            writeln!(out, "e {u} {v}").unwrap();
        }
        if let Some(m) = &self.matching {
            for &(u, v) in m {
                writeln!(out, "m {u} {v}").unwrap();
            }
        }
        out
    }

    /// Parses the `p`/`e`/`m` text format. Blank lines and `#` comments are ignored.
    pub fn from_text(text: &str) -> Result<Graph> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        let mut matching = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let tag = parts.next().unwrap_or_default();
            let nums: Vec<usize> = parts
                .map(|t| t.parse::<usize>().map_err(|e| parse_err(line_no, format!("{t:?}: {e}"))))
                .collect::<Result<_>>()?;
            if nums.len() != 2 {
                return Err(parse_err(line_no, format!("expected two integers after {tag:?}")));
            }
            match tag {
                "p" if header.is_none() => header = Some((nums[0], nums[1])),
                "p" => return Err(parse_err(line_no, "duplicate header")),
                "e" | "m" if header.is_none() => return Err(parse_err(line_no, "missing header")),
                "e" => edges.push((nums[0], nums[1])),
                "m" => matching.push((nums[0], nums[1])),
                other => return Err(parse_err(line_no, format!("unknown record {other:?}"))),
            }
        }
        let (n, m) = header.ok_or_else(|| parse_err(0, "missing header"))?;
        if m != edges.len() {
            return Err(parse_err(0, format!("header declares {m} edges, found {}", edges.len())));
        }
        let g = Graph::new(n, edges)?;
        if matching.is_empty() {
            Ok(g)
        } else {
            g.with_matching(matching)
        }
    }
}
