use std::collections::BTreeSet;

use super::{maximum_matching, Graph};
use crate::error::{Error, Result};

/// Largest vertex count for isomorphism-class enumeration.
pub const ENUMERATION_LIMIT: usize = 8;

fn code_bits(n: usize) -> u32 {
    (n * n.saturating_sub(1) / 2) as u32
}

// Color refinement: start from degrees, split classes by the multiset of
// neighbor colors until stable. Colors are ranks of sorted signatures, so
// they are invariant under relabelling.
fn refine(n: usize, adj: &[u16]) -> Vec<usize> {
    let mut color: Vec<usize> = adj.iter().map(|m| m.count_ones() as usize).collect();
    let mut classes = usize::MAX;
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut ns: Vec<usize> = (0..n).filter(|&w| adj[v] >> w & 1 == 1).map(|w| color[w]).collect();
                ns.sort_unstable();
                (color[v], ns)
            })
            .collect();
        let distinct: Vec<&(usize, Vec<usize>)> = sigs.iter().collect::<BTreeSet<_>>().into_iter().collect();
        let next: Vec<usize> = sigs.iter().map(|s| distinct.binary_search(&s).unwrap()).collect();
        let count = distinct.len();
        color = next;
        if count == classes {
            return color;
        }
        classes = count;
    }
}

struct Search<'a> {
    n: usize,
    adj: &'a [u16],
    color: Vec<usize>,
    // color required at each position; cells occupy consecutive positions
    position_color: Vec<usize>,
    order: Vec<usize>,
    used: u16,
    best: u64,
}

impl Search<'_> {
    // Position `j` contributes bits for pairs (i, j), i < j, in that order;
    // earlier positions are more significant, so prefixes can be pruned.
    fn place(&mut self, j: usize, code: u64) {
        let total = code_bits(self.n);
        if j == self.n {
            self.best = self.best.min(code);
            return;
        }
        for v in 0..self.n {
            if self.used >> v & 1 == 1 || self.color[v] != self.position_color[j] {
                continue;
            }
            let mut c = code;
            for i in 0..j {
                c = c << 1 | u64::from(self.adj[self.order[i]] >> v & 1);
            }
            let set = code_bits(j + 1);
            let shift = total - set;
            if self.best != u64::MAX && c > self.best >> shift {
                continue;
            }
            self.order.push(v);
            self.used |= 1 << v;
            self.place(j + 1, c);
            self.used &= !(1 << v);
            self.order.pop();
        }
    }
}

/// Canonical code of a graph given as neighbor masks; equal codes iff isomorphic.
fn canonical_code(n: usize, adj: &[u16]) -> u64 {
    let color = refine(n, adj);
    let mut position_color = color.clone();
    position_color.sort_unstable();
    let mut search =
        Search { n, adj, color, position_color, order: Vec::with_capacity(n), used: 0, best: u64::MAX };
    search.place(0, 0);
    search.best
}

fn decode(n: usize, code: u64) -> Graph {
    let total = code_bits(n);
    let mut edges = Vec::new();
    let mut bit = total;
    for j in 1..n {
        for i in 0..j {
            bit -= 1;
            if code >> bit & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    Graph::new(n, edges).expect("decoded code is a simple graph")
}

fn masks(n: usize, code: u64) -> Vec<u16> {
    let g = decode(n, code);
    (0..n).map(|v| g.neighbors(v).iter().fold(0u16, |m, &w| m | 1 << w)).collect()
}

/// One representative of every isomorphism class of graphs on `n` vertices,
/// in canonical labelling, sorted by canonical code.
pub fn all_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > ENUMERATION_LIMIT {
        return Err(Error::OracleScale { got: n, limit: ENUMERATION_LIMIT });
    }
    let mut level: BTreeSet<u64> = BTreeSet::from([0]);
    for k in 1..n {
        let mut next = BTreeSet::new();
        for &code in &level {
            let base = masks(k, code);
            for subset in 0u16..(1 << k) {
                let mut adj = base.clone();
                adj.push(subset);
                for (w, m) in adj.iter_mut().enumerate().take(k) {
                    *m |= (subset >> w & 1) << k;
                }
                next.insert(canonical_code(k + 1, &adj));
            }
        }
        level = next;
    }
    Ok(level.into_iter().map(|c| decode(n, c)).collect())
}

/// Every isomorphism class of graphs on `2·num_pairs` vertices that has a
/// perfect matching, relabelled so the designated matching is `(2i, 2i+1)`.
pub fn perfect_matching_graphs(num_pairs: usize) -> Result<Vec<Graph>> {
    let n = 2 * num_pairs;
    let mut out = Vec::new();
    for g in all_graphs(n)? {
        let m = maximum_matching(&g)?;
        if m.len() == num_pairs {
            let order: Vec<usize> = m.iter().flat_map(|&(u, v)| [u, v]).collect();
            let designated = (0..num_pairs).map(|i| (2 * i, 2 * i + 1)).collect();
            out.push(g.induced_subgraph(&order).with_matching(designated)?);
        }
    }
    Ok(out)
}
