#![allow(dead_code)]

use rgm_core::graph::{Graph, Vertex};

/// Published tightened Ranking LP objectives, n = 1..=12.
pub const TIGHTENED: [f64; 12] =
    [0.39999, 0.48263, 0.51391, 0.52480, 0.53247, 0.53783, 0.54140, 0.54429, 0.54639, 0.54804, 0.54947, 0.55060];

/// Published FRanking LP objectives, n = 1..=8.
pub const FRANKING: [f64; 8] = [0.5, 0.5, 0.50555, 0.51153, 0.51793, 0.52125, 0.52338, 0.52600];

/// Tolerance on published five-digit values.
pub const GOLDEN_TOL: f64 = 5e-5;

/// Matching produced by the vertex-by-vertex pseudocode: vertices decide in
/// increasing `decide` key; a free decider takes its free neighbor with the
/// smallest `prefer` key. Returns `(decider, partner)` pairs in match order.
fn vertex_by_vertex(g: &Graph, decide: &[f64], prefer: &[f64]) -> Vec<(Vertex, Vertex)> {
    let n = g.vertex_count();
    let mut order: Vec<Vertex> = (0..n).collect();
    order.sort_by(|&a, &b| decide[a].total_cmp(&decide[b]));
    let mut matched = vec![false; n];
    let mut out = Vec::new();
    for v in order {
        if matched[v] {
            continue;
        }
        let mut best: Option<Vertex> = None;
        for u in 0..n {
            if u != v && g.has_edge(u, v) && !matched[u] && best.is_none_or(|b| prefer[u] < prefer[b]) {
                best = Some(u);
            }
        }
        if let Some(u) = best {
            matched[v] = true;
            matched[u] = true;
            out.push((v, u));
        }
    }
    out
}

/// Ranking: decide and prefer by the same ranks.
pub fn ranking_pseudocode(g: &Graph, x: &[f64]) -> Vec<(Vertex, Vertex)> {
    vertex_by_vertex(g, x, x)
}

/// FRanking: decide in order `pi`, prefer by ranks `x`.
pub fn franking_pseudocode(g: &Graph, pi: &[Vertex], x: &[f64]) -> Vec<(Vertex, Vertex)> {
    let mut decide = vec![0.0; pi.len()];
    for (i, &v) in pi.iter().enumerate() {
        decide[v] = i as f64;
    }
    vertex_by_vertex(g, &decide, x)
}

/// Ranks `1/(n+1), …, n/(n+1)` in the order given by `perm`.
pub fn ranks_from_perm(perm: &[Vertex]) -> Vec<f64> {
    let n = perm.len();
    let mut x = vec![0.0; n];
    for (i, &v) in perm.iter().enumerate() {
        x[v] = (i + 1) as f64 / (n + 1) as f64;
    }
    x
}

/// Every permutation of `0..n`, by Heap's algorithm.
pub fn permutations(n: usize) -> Vec<Vec<Vertex>> {
    let mut a: Vec<Vertex> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut out = vec![a.clone()];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Maximum matching size by trying every edge subset.
pub fn brute_force_matching(g: &Graph) -> usize {
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    assert!(edges.len() <= 20, "brute force limited to 20 edges");
    let mut best = 0;
    for mask in 0u32..(1 << edges.len()) {
        let mut used = 0u64;
        let mut ok = true;
        for (i, &(a, b)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                if used >> a & 1 == 1 || used >> b & 1 == 1 {
                    ok = false;
                    break;
                }
                used |= 1 << a | 1 << b;
            }
        }
        if ok {
            best = best.max(mask.count_ones() as usize);
        }
    }
    best
}

/// Exact expected Ranking ratio through the pseudocode over all orders.
pub fn ranking_ratio_by_pseudocode(g: &Graph) -> f64 {
    let perms = permutations(g.vertex_count());
    let total: usize = perms.iter().map(|p| ranking_pseudocode(g, &ranks_from_perm(p)).len()).sum();
    let opt = brute_force_matching(g);
    if opt == 0 {
        1.0
    } else {
        total as f64 / perms.len() as f64 / opt as f64
    }
}

/// Random graph on `n` vertices with edge probability `p`.
pub fn random_graph(n: usize, p: f64, rng: &mut impl rand::Rng) -> Graph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}
