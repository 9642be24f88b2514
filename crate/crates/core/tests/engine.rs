mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

use common::{franking_pseudocode, permutations, random_graph, ranking_pseudocode};
use rgm_core::graph::{maximum_matching_size, Graph, Vertex};
use rgm_core::greedy::{
    build_algorithm_list, exclude, franking_list, fully_online_match, fully_online_match_with_ranks, greedy_match, Event,
    ranking_list, AlgorithmKind, MatchingTrace, QueryList, RankVector, Schedule,
};
use rgm_core::harness::exact_expected_ratio;
use rgm_core::rng;

fn decider_pairs(t: &MatchingTrace) -> Vec<(Vertex, Vertex)> {
    t.pairs().iter().map(|p| (p.active, p.passive)).collect()
}

fn edges_of(t: &MatchingTrace) -> Vec<(Vertex, Vertex)> {
    let mut e: Vec<_> = t.pairs().iter().map(|p| (p.active.min(p.passive), p.active.max(p.passive))).collect();
    e.sort_unstable();
    e
}

fn draw(i: u64, stream: u64) -> (Graph, RankVector, Vec<Vertex>, rng::Rng) {
    let mut r = rng::split(stream, i);
    let n = r.random_range(1..=10);
    let g = random_graph(n, r.random_range(0.1..0.9), &mut r);
    let x = RankVector::sample(n, &mut r);
    let mut pi: Vec<Vertex> = (0..n).collect();
    pi.shuffle(&mut r);
    (g, x, pi, r)
}

#[test]
fn engine_examples() {
    let k3 = Graph::new(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
    let list = QueryList::explicit(3, vec![(0, 1), (0, 2), (1, 2), (1, 0), (2, 0), (2, 1)]).unwrap();
    assert_eq!(edges_of(&greedy_match(&k3, &list)), vec![(0, 1)]);
    assert_eq!(greedy_match(&k3, &list.exclude(&[0, 1, 2]).unwrap()).size(), 0);
    let p4 = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
    let mut pairs = vec![(1, 2)];
    pairs.extend((0..4).flat_map(|a| (0..4).map(move |b| (a, b))).filter(|&(a, b)| a != b && (a, b) != (1, 2)));
    let t = greedy_match(&p4, &QueryList::explicit(4, pairs).unwrap());
    assert_eq!((edges_of(&t), maximum_matching_size(&p4).unwrap()), (vec![(1, 2)], 2));
}

#[test]
fn list_order_examples() {
    let two = ranking_list(&RankVector::new(vec![0.1, 0.2]).unwrap());
    assert_eq!(two.materialize(), vec![(0, 1), (1, 0)]);
    let three = ranking_list(&RankVector::new(vec![0.3, 0.1, 0.2]).unwrap());
    assert_eq!(three.materialize()[0], (1, 2));
    let f = franking_list(&[0, 1], &RankVector::new(vec![0.9, 0.4]).unwrap()).unwrap();
    assert_eq!(f.materialize(), vec![(0, 1), (1, 0)]);
}

#[test]
fn ranking_matches_pseudocode_on_500_draws() {
    for i in 0..500 {
        let (g, x, _, _) = draw(i, 21);
        let t = greedy_match(&g, &ranking_list(&x));
        assert_eq!(decider_pairs(&t), ranking_pseudocode(&g, x.as_slice()), "draw {i}");
    }
}

#[test]
fn franking_matches_pseudocode_on_500_draws() {
    for i in 0..500 {
        let (g, x, pi, _) = draw(i, 22);
        let t = greedy_match(&g, &franking_list(&pi, &x).unwrap());
        assert_eq!(decider_pairs(&t), franking_pseudocode(&g, &pi, x.as_slice()), "draw {i}");
    }
}

#[test]
fn franking_in_rank_order_is_ranking() {
    for i in 0..500 {
        let (g, x, _, _) = draw(i, 23);
        let a = greedy_match(&g, &franking_list(&x.order(), &x).unwrap());
        let b = greedy_match(&g, &ranking_list(&x));
        assert_eq!(edges_of(&a), edges_of(&b), "draw {i}");
    }
}

#[test]
fn algorithm_list_dispatch() {
    let g = random_graph(6, 0.5, &mut rng::from_seed(3));
    let id: Vec<Vertex> = (0..6).collect();
    let a = build_algorithm_list(AlgorithmKind::Greedy, &g, Some(&id), 1).unwrap();
    let b = build_algorithm_list(AlgorithmKind::Greedy, &g, Some(&id), 2).unwrap();
    assert_eq!(a, b);
    assert!(build_algorithm_list(AlgorithmKind::Franking, &g, None, 1).is_err());
    for seed in 0..20 {
        let l = build_algorithm_list(AlgorithmKind::Ranking, &g, None, seed).unwrap();
        let x = RankVector::sample(6, &mut rng::from_seed(seed));
        assert_eq!(greedy_match(&g, &l), greedy_match(&g, &ranking_list(&x)));
    }
}

/// Expected MRG matching size on `g` by enumerating π and every vertex's
/// preference over its neighbors.
fn mrg_expected_size(g: &Graph) -> f64 {
    let n = g.vertex_count();
    let neighbor_orders: Vec<Vec<Vec<Vertex>>> = (0..n)
        .map(|v| permutations(g.degree(v)).into_iter().map(|p| p.iter().map(|&i| g.neighbors(v)[i]).collect()).collect())
        .collect();
    let mut total = 0usize;
    let mut count = 0usize;
    for pi in permutations(n) {
        let mut choice = vec![0usize; n];
        loop {
            let mut matched = vec![false; n];
            let mut size = 0;
            for &v in &pi {
                if matched[v] {
                    continue;
                }
                if let Some(&u) = neighbor_orders[v][choice[v]].iter().find(|&&u| !matched[u]) {
                    matched[u] = true;
                    matched[v] = true;
                    size += 1;
                }
            }
            total += size;
            count += 1;
            let Some(v) = (0..n).find(|&v| choice[v] + 1 < neighbor_orders[v].len()) else { break };
            choice[v] += 1;
            for c in choice.iter_mut().take(v) {
                *c = 0;
            }
        }
    }
    total as f64 / count as f64
}

#[test]
fn mrg_on_k4_sampled_agrees_with_enumeration() {
    let k4 = Graph::new(4, (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b)))).unwrap();
    let exact = mrg_expected_size(&k4);
    let lib = exact_expected_ratio(&k4, AlgorithmKind::Mrg, None).unwrap().mean * 2.0;
    assert!((exact - lib).abs() < 1e-12, "{exact} vs {lib}");
    let trials = 100_000u64;
    let sizes: Vec<f64> = (0..trials)
        .map(|s| greedy_match(&k4, &build_algorithm_list(AlgorithmKind::Mrg, &k4, None, s).unwrap()).size() as f64)
        .collect();
    let mean = sizes.iter().sum::<f64>() / trials as f64;
    let var = sizes.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (trials - 1) as f64;
    let se = (var / trials as f64).sqrt();
    assert!((mean - exact).abs() <= 3.0 * se, "mean {mean} exact {exact} se {se}");
}

#[test]
fn fully_online_examples() {
    let edge = Graph::new(2, [(0, 1)]).unwrap();
    for seed in 0..50 {
        let s = Schedule::random(2, &mut rng::from_seed(seed));
        let out = fully_online_match(&edge, &s, seed).unwrap();
        assert_eq!(out.trace.size(), 1 - out.dropped_edges.len());
        let (arrive, deadline) = (s.arrival_order(), s.deadline_order());
        let valid = s.events().iter().position(|e| *e == Event::Arrive(arrive[1]))
            < s.events().iter().position(|e| *e == Event::Deadline(deadline[0]));
        assert_eq!(out.dropped_edges.is_empty(), valid);
    }
    for i in 0..100 {
        let (g, x, pi, _) = draw(i, 24);
        let s = Schedule::all_arrive_first(&pi).unwrap();
        let out = fully_online_match_with_ranks(&g, &s, &x).unwrap();
        assert!(out.dropped_edges.is_empty());
        assert_eq!(out.trace, greedy_match(&g, &franking_list(&pi, &x).unwrap()));
    }
}

fn arb_instance() -> impl Strategy<Value = (Graph, QueryList)> {
    (1usize..=9, any::<u64>()).prop_map(|(n, seed)| {
        let mut r = rng::from_seed(seed);
        let g = random_graph(n, r.random_range(0.1..0.9), &mut r);
        let mut pairs: Vec<(Vertex, Vertex)> =
            (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| a != b).collect();
        pairs.shuffle(&mut r);
        (g, QueryList::explicit(n, pairs).unwrap())
    })
}

fn is_maximal(g: &Graph, t: &MatchingTrace) -> bool {
    g.edges().all(|(a, b)| t.is_matched(a) || t.is_matched(b) || t.is_excluded(a) || t.is_excluded(b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn matching_is_valid_maximal_and_deterministic((g, list) in arb_instance(), drop in any::<u64>()) {
        let n = g.vertex_count();
        let list = list.exclude(&[(drop % n as u64) as usize]).unwrap();
        let t = greedy_match(&g, &list);
        prop_assert_eq!(&t, &greedy_match(&g, &list));
        prop_assert!(is_maximal(&g, &t));
        let mut times = Vec::new();
        for p in t.pairs() {
            prop_assert!(g.has_edge(p.active, p.passive));
            prop_assert!(!list.is_excluded(p.active) && !list.is_excluded(p.passive));
            prop_assert_eq!(p.time, list.pair_time(p.active, p.passive));
            prop_assert_eq!(list.time(p.active, p.passive), p.time);
            times.push(p.time);
        }
        prop_assert!(times.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn removal_never_grows_and_half_guarantee((g, list) in arb_instance()) {
        let t = greedy_match(&g, &list);
        prop_assert!(2 * t.size() >= maximum_matching_size(&g).unwrap());
        for v in 0..g.vertex_count() {
            let lv = exclude(&list, &[v]).unwrap();
            let tv = greedy_match(&g, &lv);
            prop_assert!(!tv.is_matched(v));
            prop_assert!(t.size() >= tv.size());
        }
    }

    #[test]
    fn exclusion_composes((g, list) in arb_instance(), a in any::<u64>(), b in any::<u64>()) {
        let n = g.vertex_count() as u64;
        let (u, v) = ((a % n) as usize, (b % n) as usize);
        prop_assert_eq!(list.exclude(&[]).unwrap(), list.clone());
        let twice = list.exclude(&[u]).unwrap().exclude(&[v]).unwrap();
        let once = list.exclude(&[u, v]).unwrap();
        prop_assert_eq!(greedy_match(&g, &twice), greedy_match(&g, &once));
        prop_assert_eq!(twice.materialize(), list.materialize());
    }
}
