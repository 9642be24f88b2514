use rand::seq::SliceRandom;
use rand::Rng as _;

use super::{odd_girth, Graph, Vertex};
use crate::error::{Error, Result};
use crate::rng;

fn validate_pairs(num_pairs: usize) -> Result<()> {
    if num_pairs == 0 {
        return Err(Error::InvalidParameter("num_pairs must be at least 1".into()));
    }
    Ok(())
}

fn designated(num_pairs: usize) -> Vec<(Vertex, Vertex)> {
    (0..num_pairs).map(|i| (2 * i, 2 * i + 1)).collect()
}

fn sample(num_pairs: usize, p: f64, rng: &mut rng::Rng) -> Graph {
    let n = 2 * num_pairs;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if u % 2 == 0 && v == u + 1 {
                edges.push((u, v));
            } else if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges)
        .and_then(|g| g.with_matching(designated(num_pairs)))
        .expect("generated edges are simple and contain the matching")
}

/// Graph on `2·num_pairs` vertices with matching `(2i, 2i+1)`; every other
/// pair is an edge independently with probability `extra_edge_probability`.
/// Pairs are visited in lexicographic order, one uniform draw each.
pub fn generate_perfect_matching_graph(num_pairs: usize, extra_edge_probability: f64, seed: u64) -> Result<Graph> {
    validate_pairs(num_pairs)?;
    if !(0.0..=1.0).contains(&extra_edge_probability) {
        return Err(Error::InvalidParameter(format!(
            "extra_edge_probability {extra_edge_probability} outside [0,1]"
        )));
    }
    Ok(sample(num_pairs, extra_edge_probability, &mut rng::from_seed(seed)))
}

/// Perfect-matching graph whose odd girth is at least `min_odd_girth`.
///
/// Attempt `a` samples with extra-edge density `0.5·(1 − a/max_attempts)`
/// until the odd girth is large enough. When `2·num_pairs ≥ min_odd_girth`
/// a cycle of exactly that length is then spliced through randomly chosen
/// matching pairs; chords among its vertices are removed, and the splice is
/// abandoned if an odd cycle shorter than `min_odd_girth` remains.
pub fn generate_odd_girth_graph(num_pairs: usize, min_odd_girth: usize, max_attempts: usize, seed: u64) -> Result<Graph> {
    validate_pairs(num_pairs)?;
    if min_odd_girth < 5 || min_odd_girth % 2 == 0 {
        return Err(Error::InvalidParameter(format!("min_odd_girth {min_odd_girth} must be odd and at least 5")));
    }
    if max_attempts == 0 {
        return Err(Error::InvalidParameter("max_attempts must be at least 1".into()));
    }
    let ok = |g: &Graph| odd_girth(g).is_none_or(|l| l >= min_odd_girth);
    for attempt in 0..max_attempts {
        let mut rng = rng::split(seed, attempt as u64);
        let density = 0.5 * (1.0 - attempt as f64 / max_attempts as f64);
        let g = sample(num_pairs, density, &mut rng);
        if !ok(&g) {
            continue;
        }
        let out = if 2 * num_pairs >= min_odd_girth {
            let spliced = splice_cycle(&g, min_odd_girth, &mut rng);
            if ok(&spliced) {
                spliced
            } else {
                g
            }
        } else {
            g
        };
        debug_assert!(ok(&out));
        return Ok(out);
    }
    Err(Error::GenerationExhausted(max_attempts))
}

// Cycle a1 b1 a2 b2 ... a_m b_m c back to a1, where (a_i, b_i) are matching
// pairs and c is one endpoint of a further pair.
fn splice_cycle(g: &Graph, length: usize, rng: &mut rng::Rng) -> Graph {
    let mut pairs: Vec<(Vertex, Vertex)> = g.designated_matching().unwrap().to_vec();
    pairs.shuffle(rng);
    let m = (length - 1) / 2;
    let mut cycle = Vec::with_capacity(length);
    for &(a, b) in &pairs[..m] {
        if rng.random::<bool>() {
            cycle.extend([a, b]);
        } else {
            cycle.extend([b, a]);
        }
    }
    let (a, b) = pairs[m];
    cycle.push(if rng.random::<bool>() { a } else { b });
    let cycle_edges: Vec<(Vertex, Vertex)> =
        (0..length).map(|i| norm(cycle[i], cycle[(i + 1) % length])).collect();
    let on_cycle = |v: Vertex| cycle.contains(&v);
    let mut edges: Vec<(Vertex, Vertex)> = g
        .edges()
        .filter(|&(u, v)| !(on_cycle(u) && on_cycle(v)) || cycle_edges.contains(&(u, v)))
        .collect();
    for &e in &cycle_edges {
        if !edges.contains(&e) {
            edges.push(e);
        }
    }
    Graph::new(g.vertex_count(), edges)
        .and_then(|h| h.with_matching(g.designated_matching().unwrap().to_vec()))
        .expect("splicing keeps the matching edges")
}

fn norm(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    (u.min(v), u.max(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_densities() {
        let g = generate_perfect_matching_graph(1, 0.0, 9).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        let k4 = generate_perfect_matching_graph(2, 1.0, 9).unwrap();
        assert_eq!(k4.edge_count(), 6);
        assert_eq!(k4.designated_matching(), Some(&[(0, 1), (2, 3)][..]));
    }

    #[test]
    fn superset_of_matching_and_deterministic() {
        let g = generate_perfect_matching_graph(3, 0.5, 42).unwrap();
        for (u, v) in [(0, 1), (2, 3), (4, 5)] {
            assert!(g.has_edge(u, v));
        }
        assert_eq!(g, generate_perfect_matching_graph(3, 0.5, 42).unwrap());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(generate_perfect_matching_graph(0, 0.5, 1).is_err());
        assert!(generate_perfect_matching_graph(1, 1.5, 1).is_err());
        assert!(generate_odd_girth_graph(3, 4, 10, 1).is_err());
        assert!(generate_odd_girth_graph(3, 3, 10, 1).is_err());
        assert!(generate_odd_girth_graph(3, 5, 0, 1).is_err());
    }

    #[test]
    fn odd_girth_examples() {
        for seed in 0..50 {
            let g = generate_odd_girth_graph(3, 5, 100, seed).unwrap();
            assert_eq!(g.vertex_count(), 6);
            assert!(odd_girth(&g).is_none_or(|l| l >= 5));
            let g = generate_odd_girth_graph(2, 5, 100, seed).unwrap();
            assert!(odd_girth(&g).is_none_or(|l| l >= 5));
            let g = generate_odd_girth_graph(1, 5, 100, seed).unwrap();
            assert_eq!(g.edge_count(), 1);
        }
    }

    #[test]
    fn splice_makes_class_bound_tight() {
        let tight = (0..50)
            .filter(|&s| odd_girth(&generate_odd_girth_graph(4, 7, 100, s).unwrap()) == Some(7))
            .count();
        assert!(tight > 0);
    }

    #[test]
    fn exhaustion_is_reported() {
        // One attempt at density 0.5 on 12 vertices leaves a short odd cycle for this seed range.
        let failures = (0..20).filter(|&s| generate_odd_girth_graph(6, 11, 1, s).is_err()).count();
        assert!(failures > 0);
    }
}
