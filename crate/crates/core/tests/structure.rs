mod common;

use proptest::prelude::*;
use rand::Rng;

use common::{permutations, random_graph, ranks_from_perm};
use rgm_core::graph::{generate_odd_girth_graph, odd_girth, Graph};
use rgm_core::greedy::{greedy_match, ranking_list, QueryList, RankVector};
use rgm_core::rng;
use rgm_core::structure::{
    alternating_path, backup_of, blockers_of, insertion_outcomes, ranking_profile, thresholds, Analyzer, Context,
};

/// Every ordered pair, with `first` moved to the front.
fn list_with_first(n: usize, first: &[(usize, usize)]) -> QueryList {
    let mut pairs = first.to_vec();
    for a in 0..n {
        for b in 0..n {
            if a != b && !pairs.contains(&(a, b)) {
                pairs.push((a, b));
            }
        }
    }
    QueryList::explicit(n, pairs).unwrap()
}

#[test]
fn path_backup_and_blocker_examples() {
    let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
    let l = list_with_first(3, &[(1, 0)]);
    assert_eq!(alternating_path(&g, &l, 1).unwrap().vertices, vec![1, 0]);

    let k3 = Graph::new(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
    let l = list_with_first(3, &[(0, 1), (0, 2)]);
    assert_eq!(backup_of(&k3, &l, 0).unwrap(), Some(2));
    let edge = Graph::new(2, [(0, 1)]).unwrap();
    assert_eq!(backup_of(&edge, &list_with_first(2, &[]), 0).unwrap(), None);

    let p3 = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
    let l = list_with_first(3, &[(0, 1)]);
    assert_eq!(blockers_of(&p3, &l, 2).unwrap(), vec![0]);
    assert!(blockers_of(&p3, &l, 0).unwrap().is_empty());
}

#[test]
fn k4_ranking_profiles_over_all_orders() {
    let k4 = Graph::new(4, (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b)))).unwrap();
    for perm in permutations(4) {
        let x = RankVector::new(ranks_from_perm(&perm)).unwrap();
        for us in 0..4 {
            // Without u* a triangle remains: one vertex stays unmatched, and a
            // matched u falls back to the third vertex.
            let mut unmatched = 0;
            for u in (0..4).filter(|&w| w != us) {
                let p = ranking_profile(&k4, &x, u, us).unwrap();
                match p.v {
                    None => {
                        unmatched += 1;
                        assert_eq!((p.b, p.x_b), (None, None));
                    }
                    Some(v) => {
                        let third = (0..4).find(|&w| w != us && w != u && w != v).unwrap();
                        assert_eq!(p.b, Some(third));
                        assert!(p.x_v.unwrap() < p.x_b.unwrap());
                    }
                }
            }
            assert_eq!(unmatched, 1);
        }
    }
}

#[test]
fn isolated_inserted_vertex_has_zero_threshold() {
    let g = Graph::new(4, [(0, 1), (1, 2)]).unwrap();
    let x = RankVector::new(vec![0.2, 0.5, 0.7, 0.9]).unwrap();
    let r = thresholds(&g, &x, 1, 3, &Context::Ranking).unwrap();
    assert_eq!((r.theta0, r.theta3), (0.0, 0.0));
}

#[test]
fn insertion_outcomes_constant_on_intervals() {
    for i in 0..500u64 {
        let mut r = rng::split(31, i);
        let n = r.random_range(2..=8);
        let g = random_graph(n, r.random_range(0.2..0.8), &mut r);
        let x = RankVector::sample(n, &mut r);
        let us = r.random_range(0..n);
        let outcomes = insertion_outcomes(&g, &x, us, &Context::Ranking).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for o in &outcomes {
            let y = r.random_range(o.lo..o.hi);
            if y <= o.lo {
                continue;
            }
            let t = greedy_match(&g, &ranking_list(&x.with_rank(us, y).unwrap()));
            assert_eq!(t.mates(), o.trace.mates(), "instance {i} at {y} in ({}, {})", o.lo, o.hi);
            let star = o.trace.mate(us).map_or(f64::INFINITY, |w| o.ranks.get(w));
            assert!(star >= prev, "instance {i}: u* match rank decreased");
            prev = star;
        }
    }
}

fn odd_girth_instance() -> impl Strategy<Value = (Graph, usize, RankVector)> {
    (2usize..=5, 2usize..=3, any::<u64>()).prop_map(|(pairs, k, seed)| {
        let g = generate_odd_girth_graph(pairs, 2 * k + 1, 1000, seed).unwrap();
        let x = RankVector::sample(g.vertex_count(), &mut rng::from_seed(seed ^ 1));
        (g, k, x)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn unmatched_partner_paths_respect_odd_girth((g, k, x) in odd_girth_instance()) {
        prop_assert!(odd_girth(&g).is_none_or(|l| l >= 2 * k + 1));
        let a = Analyzer::new(&g);
        for &(p, q) in g.designated_matching().unwrap() {
            for (u, us) in [(p, q), (q, p)] {
                for o in a.insertion_outcomes(&x, us, &Context::Ranking, &[]).unwrap() {
                    if o.reference.is_matched(u) && !o.trace.is_matched(u) {
                        let path = a.path_from_runs(&o.trace, &o.reference, us).unwrap();
                        let j = path.index_of(u).unwrap();
                        prop_assert!(j >= 2 * k, "path {:?} shorter than {}", path.vertices, 2 * k);
                    }
                }
            }
        }
    }

    #[test]
    fn ranking_path_ranks_increase(n in 2usize..=9, seed in any::<u64>()) {
        let mut r = rng::from_seed(seed);
        let g = random_graph(n, r.random_range(0.2..0.9), &mut r);
        let x = RankVector::sample(n, &mut r);
        let l = ranking_list(&x);
        for v in 0..n {
            let p = alternating_path(&g, &l, v).unwrap();
            for w in p.vertices.windows(3) {
                prop_assert!(x.get(w[0]) < x.get(w[2]));
            }
        }
    }
}
