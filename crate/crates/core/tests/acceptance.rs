//! Acceptance criteria 1 to 9, one PASS/FAIL line each.

mod common;

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

use common::{franking_pseudocode, permutations, random_graph, ranking_pseudocode, ranks_from_perm, FRANKING, GOLDEN_TOL, TIGHTENED};
use rgm_core::graph::{odd_girth, perfect_matching_graphs, Graph};
use rgm_core::greedy::{
    franking_list, fully_online_match, greedy_match, ranking_list, AlgorithmKind, MatchingTrace, RankVector, Schedule,
};
use rgm_core::harness::{
    check_bound_dominance, lemma_names, lemma_suite_with, uniform_bound_check, Evaluation, InstanceFamily, SuiteOptions,
};
use rgm_core::lp::{build_franking_lp, build_odd_girth_ranking_lp, build_ranking_lp, build_tightened_ranking_lp, solve, LpModel, Status};
use rgm_core::rng;

type Verdict = Result<String, String>;

fn objective(model: rgm_core::Result<LpModel>) -> Result<f64, String> {
    let model = model.map_err(|e| e.to_string())?;
    let s = solve(&model);
    if s.status != Status::Optimal {
        return Err(format!("{} n={} solver status {:?}", model.variant, model.n, s.status));
    }
    Ok(s.objective_value)
}

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn golden(name: &str, build: fn(usize) -> rgm_core::Result<LpModel>, table: &[f64]) -> Verdict {
    let mut worst = 0.0f64;
    for (i, &want) in table.iter().enumerate() {
        let n = i + 1;
        let got = objective(build(n))?;
        let err = (got - want).abs();
        worst = worst.max(err);
        if err > GOLDEN_TOL {
            return Err(format!("{name} n={n}: {got:.6} vs published {want} (|diff| {err:.2e})"));
        }
    }
    Ok(format!("{name} n=1..{}: max |diff| {worst:.2e} <= {GOLDEN_TOL:e}", table.len()))
}

fn criterion1() -> Verdict {
    golden("tightened", build_tightened_ranking_lp, &TIGHTENED[..8])
}

fn criterion2() -> Verdict {
    golden("franking", build_franking_lp, &FRANKING[..6])
}

fn criterion3() -> Verdict {
    let mut last = (0.0, 0.0);
    for n in 1..=8 {
        let simple = objective(build_ranking_lp(n))?;
        let tight = objective(build_tightened_ranking_lp(n))?;
        if simple > tight + 1e-9 {
            return Err(format!("n={n}: simple {simple:.9} above tightened {tight:.9}"));
        }
        last = (simple, tight);
    }
    let (s8, t8) = last;
    if !(s8 > 0.5 && s8 <= t8) {
        return Err(format!("simple n=8 {s8:.6} outside (0.5, {t8:.6}]"));
    }
    Ok(format!("simple <= tightened + 1e-9 for n=1..8; simple n=8 = {s8:.6} in (0.5, {t8:.6}]"))
}

fn criterion4() -> Verdict {
    let mut summary = Vec::new();
    for n in [4, 6, 8] {
        let simple = objective(build_ranking_lp(n))?;
        let mut prev = f64::NEG_INFINITY;
        let mut row = Vec::new();
        for k in [2, 3, 4, 6] {
            let v = objective(build_odd_girth_ranking_lp(n, k))?;
            if v < prev - 1e-9 {
                return Err(format!("n={n} k={k}: {v:.6} below k-previous {prev:.6}"));
            }
            if v < simple - 1e-9 {
                return Err(format!("n={n} k={k}: {v:.6} below simple {simple:.6}"));
            }
            prev = v;
            row.push(format!("{v:.6}"));
        }
        summary.push(format!("n={n} [{}] >= {simple:.6}", row.join(" ")));
    }
    Ok(summary.join("; "))
}

fn criterion5() -> Verdict {
    let start = Instant::now();
    let mut opts = SuiteOptions::new(1000, 7);
    opts.exhaustive_max_pairs = 3;
    opts.jobs = jobs();
    let report = lemma_suite_with(&lemma_names(), &opts).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let assertions: u64 = report.checks.iter().map(|c| c.assertions).sum();
    if let Some(c) = report.checks.iter().find(|c| c.failures > 0) {
        let w = c.witness.as_ref().map(|w| w.message.clone()).unwrap_or_default();
        return Err(format!("{} failed on {} instances: {w}", c.name, c.failures));
    }
    if report.checks.iter().any(|c| c.assertions == 0) {
        return Err("a check made no assertions".into());
    }
    if elapsed > Duration::from_secs(20 * 60) {
        return Err(format!("suite took {:.0}s, over 20 minutes", elapsed.as_secs_f64()));
    }
    Ok(format!(
        "{} checks, {} assertions, 0 failures in {:.0}s",
        report.checks.len(),
        assertions,
        elapsed.as_secs_f64()
    ))
}

fn criterion6() -> Verdict {
    for i in 0..500u64 {
        let mut r = rng::split(606, i);
        let n = r.random_range(1..=10);
        let g = random_graph(n, r.random_range(0.2..0.8), &mut r);
        let schedule = Schedule::random(n, &mut r);
        let seed: u64 = r.random();
        let out = fully_online_match(&g, &schedule, seed).map_err(|e| e.to_string())?;
        let pi = schedule.deadline_order();
        let list = franking_list(&pi, &out.ranks).map_err(|e| e.to_string())?;
        let offline = greedy_match(&out.effective_graph, &list);
        if offline != out.trace {
            return Err(format!("instance {i}: fully online {:?} vs FRanking {:?}", out.trace.pairs(), offline.pairs()));
        }
        let literal = franking_pseudocode(&out.effective_graph, &pi, out.ranks.as_slice());
        if literal != decider_pairs(&out.trace) {
            return Err(format!("instance {i}: fully online {:?} vs pseudocode {literal:?}", out.trace.pairs()));
        }
    }
    Ok("500 instances, fully online = FRanking engine = FRanking pseudocode".into())
}

fn decider_pairs(t: &MatchingTrace) -> Vec<(usize, usize)> {
    t.pairs().iter().map(|p| (p.active, p.passive)).collect()
}

fn criterion7() -> Verdict {
    let j = jobs();
    let ranking = check_bound_dominance(&InstanceFamily::AllPerfectMatching { max_pairs: 4 }, AlgorithmKind::Ranking, TIGHTENED[4], Evaluation::Exact, j)
        .map_err(|e| e.to_string())?;
    if !ranking.passed {
        return Err(format!("Ranking below {} (min margin {:.6})", TIGHTENED[4], ranking.min_margin));
    }
    let franking = check_bound_dominance(&InstanceFamily::AllPerfectMatching { max_pairs: 3 }, AlgorithmKind::Franking, FRANKING[4], Evaluation::Exact, j)
        .map_err(|e| e.to_string())?;
    if !franking.passed {
        return Err(format!("worst-order FRanking below {} (min margin {:.6})", FRANKING[4], franking.min_margin));
    }
    let bound = objective(build_odd_girth_ranking_lp(8, 2))?;
    let mut graphs: Vec<Graph> = Vec::new();
    for pairs in 1..=4 {
        for g in perfect_matching_graphs(pairs).map_err(|e| e.to_string())? {
            if odd_girth(&g).is_none_or(|l| l >= 5) {
                graphs.push(g);
            }
        }
    }
    let exhaustive = graphs.len();
    let random = InstanceFamily::OddGirth { pairs: 4, min_odd_girth: 5, count: 100, seed: 77 };
    graphs.extend(random.instances().map_err(|e| e.to_string())?.into_iter().map(|(_, g)| g));
    let og = check_bound_dominance(&InstanceFamily::Explicit { graphs }, AlgorithmKind::Ranking, bound, Evaluation::Exact, j)
        .map_err(|e| e.to_string())?;
    if !og.passed {
        return Err(format!("odd-girth>=5 Ranking below {bound:.6} (min margin {:.6})", og.min_margin));
    }
    Ok(format!(
        "Ranking on {} graphs min margin {:.5}; FRanking worst order on {} graphs min margin {:.5}; \
         odd girth >= 5 on {} graphs ({exhaustive} exhaustive) vs {bound:.6} min margin {:.5}",
        ranking.rows.len(),
        ranking.min_margin,
        franking.rows.len(),
        franking.min_margin,
        og.rows.len(),
        og.min_margin
    ))
}

fn random_rational(r: &mut impl Rng, max_num: i64) -> BigRational {
    BigRational::new(BigInt::from(r.random_range(0..=max_num)), BigInt::from(r.random_range(1..=64i64)))
}

fn criterion8() -> Verdict {
    const CELLS: usize = 64;
    for i in 0..10_000u64 {
        let mut r = rng::split(808, i);
        let f: Vec<BigRational> = (0..CELLS).map(|_| random_rational(&mut r, 200)).collect();
        let mut acc = BigRational::zero();
        let g: Vec<BigRational> = (0..CELLS)
            .map(|_| {
                if r.random_bool(0.5) {
                    acc += random_rational(&mut r, 50);
                }
                acc.clone()
            })
            .collect();
        let a = random_rational(&mut r, 64);
        let b = &a + random_rational(&mut r, 64) + BigRational::new(1.into(), 64.into());
        let report = uniform_bound_check(&f, &g, &a, &b).map_err(|e| e.to_string())?;
        let delta = (&b - &a) / BigRational::from_integer(BigInt::from(CELLS));
        let lhs: BigRational = f.iter().zip(&g).map(|(x, y)| x * y * &delta).sum();
        let mass: BigRational = g.iter().map(|y| y * &delta).sum();
        let min_avg = (0..CELLS)
            .map(|c| f[c..].iter().sum::<BigRational>() / BigRational::from_integer(BigInt::from(CELLS - c)))
            .min()
            .unwrap();
        let rhs = mass * min_avg;
        if report.lhs != lhs || report.rhs != rhs {
            return Err(format!("pair {i}: report sides disagree with direct recomputation"));
        }
        if !(report.holds && lhs >= rhs) {
            return Err(format!("pair {i}: inequality fails, lhs {lhs} < rhs {rhs}"));
        }
    }
    Ok("10000 random (f, g) pairs on 64 cells, exact, zero failures".into())
}

fn criterion9() -> Verdict {
    let mut runs = 0usize;
    for i in 0..200u64 {
        let mut r = rng::split(909, i);
        let n = r.random_range(1..=6);
        let g = random_graph(n, r.random_range(0.2..0.9), &mut r);
        let franking = i % 2 == 1;
        let mut pi: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(pi.as_mut_slice(), &mut r);
        for perm in permutations(n) {
            let x = ranks_from_perm(&perm);
            let ranks = RankVector::new(x.clone()).map_err(|e| e.to_string())?;
            let (engine, literal) = if franking {
                let list = franking_list(&pi, &ranks).map_err(|e| e.to_string())?;
                (greedy_match(&g, &list), franking_pseudocode(&g, &pi, &x))
            } else {
                (greedy_match(&g, &ranking_list(&ranks)), ranking_pseudocode(&g, &x))
            };
            if decider_pairs(&engine) != literal {
                let kind = if franking { "FRANKING" } else { "RANKING" };
                return Err(format!("pair {i} ({kind}) order {perm:?}: engine {:?} vs pseudocode {literal:?}", engine.pairs()));
            }
            runs += 1;
        }
    }
    Ok(format!("200 (graph, kind) pairs, {runs} orders, engine = pseudocode"))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 9] = [
        ("tightened Ranking LP golden values", criterion1),
        ("FRanking LP golden values", criterion2),
        ("simple vs tightened dominance", criterion3),
        ("odd-girth LP ordering", criterion4),
        ("lemma suites", criterion5),
        ("fully-online equivalence", criterion6),
        ("bound dominance", criterion7),
        ("uniform-bound lemma", criterion8),
        ("oracle cross-validation", criterion9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = run();
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("criterion {}: PASS {name} ({secs:.1}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({secs:.1}s): {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
