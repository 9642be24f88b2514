use super::list::{Order, QueryList};
use super::trace::MatchingTrace;
use crate::graph::Graph;

/// Query-commit greedy matching: walk the list in order and take every edge
/// whose endpoints are both still available and not excluded.
///
/// Vertex-iterative lists are processed one decider at a time: a still-free
/// decider takes its most preferred free neighbor, which is the first
/// realizable pair of its block. The decider is the active endpoint.
pub fn greedy_match(g: &Graph, list: &QueryList) -> MatchingTrace {
    let n = g.vertex_count();
    assert_eq!(n, list.vertex_count(), "list and graph sizes differ");
    let mut trace = MatchingTrace::empty(n, |v| list.is_excluded(v));
    let free = |t: &MatchingTrace, v| !list.is_excluded(v) && !t.is_matched(v);
    match list.order() {
        Order::VertexIterative { .. } => {
            for u in list.decision_order().unwrap() {
                if !free(&trace, u) {
                    continue;
                }
                let best = g
                    .neighbors(u)
                    .iter()
                    .copied()
                    .filter(|&v| free(&trace, v))
                    .min_by(|&a, &b| {
                        list.preference_key(u, a).unwrap().total_cmp(&list.preference_key(u, b).unwrap())
                    });
                if let Some(v) = best {
                    trace.record(u, v, list.time(u, v));
                }
            }
        }
        Order::Explicit { pairs } => {
            for (t, &(u, v)) in pairs.iter().enumerate() {
                if g.has_edge(u, v) && free(&trace, u) && free(&trace, v) {
                    trace.record(u, v, t);
                }
            }
        }
    }
    trace
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::greedy::list::Preference;

    fn ranked(n: usize, order: &[usize]) -> QueryList {
        let mut keys = vec![0.0; n];
        for (i, &v) in order.iter().enumerate() {
            keys[v] = i as f64;
        }
        QueryList::vertex_iterative(keys.clone(), Preference::Common(keys)).unwrap()
    }

    #[test]
    fn triangle_takes_first_edge() {
        let g = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let t = greedy_match(&g, &ranked(3, &[0, 1, 2]));
        assert_eq!(t.size(), 1);
        assert_eq!(t.mate(0), Some(1));
        assert!(t.is_active(0) && !t.is_active(1));
    }

    #[test]
    fn all_excluded_is_empty() {
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let l = ranked(3, &[0, 1, 2]).exclude(&[0, 1, 2]).unwrap();
        assert_eq!(greedy_match(&g, &l).size(), 0);
    }

    #[test]
    fn p4_middle_edge_first() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let t = greedy_match(&g, &ranked(4, &[1, 2, 0, 3]));
        assert_eq!(t.size(), 1);
        assert_eq!(t.mate(1), Some(2));
    }

    #[test]
    fn explicit_and_vertex_iterative_agree() {
        let g = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 3)]).unwrap();
        let l = ranked(5, &[3, 0, 4, 2, 1]);
        assert_eq!(greedy_match(&g, &l), greedy_match(&g, &l.to_explicit()));
    }
}
