use std::collections::VecDeque;

use super::{Graph, Vertex};
use crate::error::{Error, Result};

/// Largest vertex count accepted by the exact matching oracle.
pub const ORACLE_LIMIT: usize = 24;

/// Length of the shortest odd cycle, or `None` when the graph is bipartite.
///
/// From every source, a breadth-first search over (vertex, parity) states finds
/// the shortest odd closed walk through the source; the minimum over sources is
/// the odd girth, since a shortest odd closed walk is an odd cycle.
pub fn odd_girth(g: &Graph) -> Option<usize> {
    let n = g.vertex_count();
    let mut best = usize::MAX;
    let mut dist = vec![[usize::MAX; 2]; n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        for d in dist.iter_mut() {
            *d = [usize::MAX; 2];
        }
        dist[s][0] = 0;
        queue.clear();
        queue.push_back((s, 0usize));
        while let Some((v, p)) = queue.pop_front() {
            let d = dist[v][p];
            if d + 1 >= best {
                break;
            }
            for &w in g.neighbors(v) {
                let q = 1 - p;
                if dist[w][q] == usize::MAX {
                    dist[w][q] = d + 1;
                    queue.push_back((w, q));
                }
            }
        }
        best = best.min(dist[s][1]);
    }
    (best != usize::MAX).then_some(best)
}

fn check_scale(g: &Graph) -> Result<()> {
    if g.vertex_count() > ORACLE_LIMIT {
        return Err(Error::OracleScale { got: g.vertex_count(), limit: ORACLE_LIMIT });
    }
    Ok(())
}

const UNKNOWN: u8 = u8::MAX;

struct Memo<'a> {
    adj: &'a [u64],
    table: Vec<u8>,
}

impl Memo<'_> {
    // Maximum matching size inside `mask`: the lowest vertex is either left
    // unmatched or matched to one of its neighbors in `mask`.
    fn best(&mut self, mask: u64) -> u8 {
        if mask == 0 {
            return 0;
        }
        let cached = self.table[mask as usize];
        if cached != UNKNOWN {
            return cached;
        }
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << v);
        let mut value = self.best(rest);
        let mut nbrs = self.adj[v] & rest;
        while nbrs != 0 {
            let w = nbrs.trailing_zeros();
            nbrs &= nbrs - 1;
            value = value.max(1 + self.best(rest & !(1 << w)));
        }
        self.table[mask as usize] = value;
        value
    }
}

/// One maximum matching, found by memoized search over vertex subsets.
///
/// Deterministic: the lowest vertex prefers staying unmatched, then its
/// lowest-indexed neighbor, among optimal choices.
pub fn maximum_matching(g: &Graph) -> Result<Vec<(Vertex, Vertex)>> {
    check_scale(g)?;
    let n = g.vertex_count();
    let adj = g.adjacency_masks();
    let mut memo = Memo { adj: &adj, table: vec![UNKNOWN; 1usize << n] };
    let mut mask: u64 = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let mut pairs = Vec::new();
    while mask != 0 {
        let target = memo.best(mask);
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << v);
        if memo.best(rest) == target {
            mask = rest;
            continue;
        }
        let mut nbrs = adj[v] & rest;
        loop {
            let w = nbrs.trailing_zeros() as usize;
            nbrs &= nbrs - 1;
            let next = rest & !(1 << w);
            if 1 + memo.best(next) == target {
                pairs.push((v, w));
                mask = next;
                break;
            }
        }
    }
    Ok(pairs)
}

/// Exact maximum matching size.
pub fn maximum_matching_size(g: &Graph) -> Result<usize> {
    check_scale(g)?;
    if let Some(m) = g.designated_matching() {
        return Ok(m.len());
    }
    maximum_matching(g).map(|m| m.len())
}

/// Induced subgraph on the vertices of one maximum matching, with that
/// matching designated as pairs `(2i, 2i+1)`. Graphs that already carry a
/// designated perfect matching are returned unchanged.
pub fn prune_to_perfect_matching(g: &Graph) -> Result<Graph> {
    if g.designated_matching().is_some() {
        return Ok(g.clone());
    }
    let pairs = maximum_matching(g)?;
    let order: Vec<Vertex> = pairs.iter().flat_map(|&(u, v)| [u, v]).collect();
    let designated = (0..pairs.len()).map(|i| (2 * i, 2 * i + 1)).collect();
    g.induced_subgraph(&order).with_matching(designated)
}
