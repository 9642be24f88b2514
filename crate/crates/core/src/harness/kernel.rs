//! Bitmask greedy kernels used by the exact enumerations.

use crate::graph::{Graph, Vertex};

/// Vertex-iterative greedy with one preference order shared by all deciders.
pub(crate) struct CommonKernel {
    adj: Vec<u64>,
    // adjacency indexed and valued by preference position
    relabeled: Vec<u64>,
    pref_pos: Vec<usize>,
}

impl CommonKernel {
    pub fn new(g: &Graph) -> Self {
        let adj = g.adjacency_masks();
        let n = adj.len();
        CommonKernel { adj, relabeled: vec![0; n], pref_pos: (0..n).collect() }
    }

    /// Sets the common preference: lower `pref_pos` is preferred.
    pub fn set_preference(&mut self, pref_pos: &[usize]) {
        self.pref_pos.copy_from_slice(pref_pos);
        for (v, &a) in self.adj.iter().enumerate() {
            let mut m = a;
            let mut r = 0u64;
            while m != 0 {
                r |= 1 << pref_pos[m.trailing_zeros() as usize];
                m &= m - 1;
            }
            self.relabeled[pref_pos[v]] = r;
        }
    }

    /// Matching size when deciders act in `decision` order and every decider
    /// takes its most preferred free neighbor.
    pub fn run(&self, decision: &[Vertex]) -> u32 {
        let n = self.adj.len();
        let mut free = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut size = 0;
        for &u in decision {
            let p = self.pref_pos[u];
            if free >> p & 1 == 0 {
                continue;
            }
            let c = self.relabeled[p] & free;
            if c != 0 {
                free &= !(1 << p | 1 << c.trailing_zeros());
                size += 1;
            }
        }
        size
    }
}

/// Inverse of a permutation given as a vertex sequence.
pub(crate) fn positions(order: &[Vertex]) -> Vec<usize> {
    let mut pos = vec![0; order.len()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    pos
}

/// Expected matching size when deciders act in `decision` order and each
/// takes a uniformly random free neighbor, as under independent uniform
/// per-vertex preferences.
pub(crate) fn uniform_choice_expectation(adj: &[u64], decision: &[Vertex]) -> f64 {
    fn go(adj: &[u64], decision: &[Vertex], free: u64) -> f64 {
        for (i, &u) in decision.iter().enumerate() {
            if free >> u & 1 == 0 {
                continue;
            }
            let c = adj[u] & free;
            if c == 0 {
                continue;
            }
            let rest = &decision[i + 1..];
            let mut total = 0.0;
            let mut m = c;
            while m != 0 {
                let w = m.trailing_zeros();
                total += 1.0 + go(adj, rest, free & !(1 << u | 1 << w));
                m &= m - 1;
            }
            return total / c.count_ones() as f64;
        }
        0.0
    }
    let n = adj.len();
    go(adj, decision, if n == 64 { u64::MAX } else { (1u64 << n) - 1 })
}
