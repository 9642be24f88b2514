use std::collections::BTreeSet;

use super::{LemmaInstance, ListSpec};
use crate::graph::{maximum_matching_size, odd_girth, Vertex};
use crate::greedy::{fully_online_match, franking_list, MatchingTrace, QueryList, RankVector};
use crate::structure::{AlternatingPath, Analyzer, Context, ProfileKind};

type Outcome = std::result::Result<u64, String>;

trait OrMsg<T> {
    fn msg(self) -> std::result::Result<T, String>;
}

impl<T> OrMsg<T> for crate::Result<T> {
    fn msg(self) -> std::result::Result<T, String> {
        self.map_err(|e| e.to_string())
    }
}

/// Assertion counter.
#[derive(Default)]
struct Tally(u64);

impl Tally {
    fn check(&mut self, ok: bool, message: impl FnOnce() -> String) -> std::result::Result<(), String> {
        self.0 += 1;
        if ok {
            Ok(())
        } else {
            Err(message())
        }
    }
}

fn edge(a: Vertex, b: Vertex) -> (Vertex, Vertex) {
    (a.min(b), a.max(b))
}

fn matched_edges(t: &MatchingTrace) -> BTreeSet<(Vertex, Vertex)> {
    t.pairs().iter().map(|p| edge(p.active, p.passive)).collect()
}

fn available(t: &MatchingTrace) -> Vec<bool> {
    (0..t.vertex_count()).map(|v| !t.is_excluded(v) && !t.is_matched(v)).collect()
}

fn pivots<'a>(list: &'a QueryList) -> impl Iterator<Item = Vertex> + 'a {
    (0..list.vertex_count()).filter(|&v| !list.is_excluded(v))
}

/// Parity membership and strictly increasing times along a path.
fn path_shape(t: &mut Tally, p: &AlternatingPath, with: &MatchingTrace, without: &MatchingTrace) -> std::result::Result<(), String> {
    for i in 0..p.len() {
        let (a, b) = (p.vertices[i], p.vertices[i + 1]);
        let (this, other) = if AlternatingPath::edge_in_full_run(i) { (with, without) } else { (without, with) };
        t.check(this.mate(a) == Some(b) && other.mate(a) != Some(b), || {
            format!("edge {i} ({a},{b}) of path {:?} in the wrong matching", p.vertices)
        })?;
        t.check(this.match_time(a) == Some(p.edge_times[i]), || format!("edge {i} of {:?} has a wrong time", p.vertices))?;
    }
    t.check(p.edge_times.windows(2).all(|w| w[0] < w[1]), || {
        format!("query times {:?} along {:?} not increasing", p.edge_times, p.vertices)
    })
}

pub(super) fn alternating_path(a: &Analyzer, inst: &LemmaInstance) -> Outcome {
    let list = inst.query_list().msg()?;
    let n = a.graph.vertex_count();
    let mut t = Tally::default();
    for v in pivots(&list) {
        let runs = a.alternating_path_runs(&list, v).msg()?;
        let p = &runs.path;
        t.check(p.vertices[0] == v, || format!("path {:?} does not start at {v}", p.vertices))?;
        let diff: BTreeSet<_> =
            matched_edges(&runs.with).symmetric_difference(&matched_edges(&runs.without)).copied().collect();
        let along: BTreeSet<_> = p.vertices.windows(2).map(|w| edge(w[0], w[1])).collect();
        t.check(diff == along, || format!("pivot {v}: symmetric difference {diff:?} is not the path {:?}", p.vertices))?;
        path_shape(&mut t, p, &runs.with, &runs.without)?;

        let mut times: Vec<usize> =
            runs.with.pairs().iter().chain(runs.without.pairs().iter()).map(|q| q.time).collect();
        times.sort_unstable();
        times.dedup();
        let initial = (
            MatchingTrace::from_pairs(n, &[], &runs.with.excluded()),
            MatchingTrace::from_pairs(n, &[], &runs.without.excluded()),
        );
        let states = std::iter::once((initial.0.clone(), initial.1.clone(), available(&initial.0), available(&initial.1)))
            .chain(times.into_iter().map(|s| {
                (runs.with.truncated(s), runs.without.truncated(s), runs.with.available_after(s), runs.without.available_after(s))
            }));
        for (w, wo, aw, awo) in states {
            let ps = a.path_from_runs(&w, &wo, v).msg()?;
            path_shape(&mut t, &ps, &w, &wo)?;
            let (k, uk) = (ps.len(), ps.last());
            for x in 0..n {
                let expected = if x != uk {
                    aw[x] == awo[x]
                } else if k % 2 == 1 {
                    !aw[x] && awo[x]
                } else {
                    aw[x] && !awo[x]
                };
                t.check(expected, || {
                    format!("pivot {v}: availability of {x} differs wrongly with partial path {:?}", ps.vertices)
                })?;
            }
        }
    }
    Ok(t.0)
}

pub(super) fn worse_off_parity(a: &Analyzer, inst: &LemmaInstance) -> Outcome {
    let list = inst.query_list().msg()?;
    let mut t = Tally::default();
    for v in pivots(&list) {
        let runs = a.alternating_path_runs(&list, v).msg()?;
        for u in pivots(&list).filter(|&u| u != v) {
            let idx = runs.path.index_of(u);
            let worse = runs.with.worse_off_than(&runs.without, u);
            let better = runs.without.worse_off_than(&runs.with, u);
            t.check(worse == idx.is_some_and(|j| j > 0 && j % 2 == 0), || {
                format!("pivot {v}: {u} worse off = {worse} but path index {idx:?}")
            })?;
            t.check(better == idx.is_some_and(|j| j % 2 == 1), || {
                format!("pivot {v}: {u} better off = {better} but path index {idx:?}")
            })?;
        }
    }
    Ok(t.0)
}

pub(super) fn backup_worse_off(a: &Analyzer, inst: &LemmaInstance) -> Outcome {
    let list = inst.query_list().msg()?;
    let ranks = match &inst.list {
        ListSpec::Ranking { ranks } => Some(ranks.clone()),
        _ => None,
    };
    let mut t = Tally::default();
    let base = a.run(&list);
    let removed: Vec<Option<MatchingTrace>> = (0..list.vertex_count())
        .map(|v| (!list.is_excluded(v)).then(|| list.exclude(&[v]).map(|l| a.run(&l))).transpose())
        .collect::<crate::Result<_>>()
        .msg()?;
    for u in pivots(&list).filter(|&u| base.is_matched(u)) {
        let b = a.backup_of(&list, u).msg()?;
        if let (Some(x), Some(b)) = (&ranks, b) {
            let m = base.mate(u).unwrap();
            t.check(x[m] < x[b], || format!("Ranking backup {b} of {u} does not outrank match {m}"))?;
        }
        for (v, wo) in removed.iter().enumerate() {
            let Some(wo) = wo else { continue };
            if v != u && wo.worse_off_than(&base, u) {
                t.check(wo.mate(u) == b, || {
                    format!("{u} worse off by removing {v} is matched to {:?}, backup {b:?}", wo.mate(u))
                })?;
            }
        }
    }
    for (v, wo) in removed.iter().enumerate() {
        let Some(wo) = wo else { continue };
        let lv = list.exclude(&[v]).msg()?;
        for u in pivots(&lv).filter(|&u| wo.is_matched(u)) {
            if base.worse_off_than(wo, u) {
                let b = a.backup_of(&lv, u).msg()?;
                t.check(base.mate(u) == b, || {
                    format!("{u} worse off by introducing {v} is matched to {:?}, backup {b:?}", base.mate(u))
                })?;
            }
        }
    }
    Ok(t.0)
}

pub(super) fn backups_in_path(a: &Analyzer, inst: &LemmaInstance) -> Outcome {
    let list = inst.query_list().msg()?;
    let mut t = Tally::default();
    for v in pivots(&list) {
        let p = a.alternating_path(&list, v).msg()?;
        let lv = list.exclude(&[v]).msg()?;
        let k = p.len();
        for i in 1..=k {
            let u = p.vertices[i];
            let expected = p.vertices.get(i + 1).copied();
            let got = if i % 2 == 1 { a.backup_of(&list, u) } else { a.backup_of(&lv, u) }.msg()?;
            t.check(got == expected, || format!("pivot {v}: backup of u_{i} = {u} is {got:?}, path {:?}", p.vertices))?;
        }
    }
    Ok(t.0)
}

pub(super) fn blockers_in_path(a: &Analyzer, inst: &LemmaInstance) -> Outcome {
    let list = inst.query_list().msg()?;
    let mut t = Tally::default();
    for v in pivots(&list) {
        let runs = a.alternating_path_runs(&list, v).msg()?;
        let p = &runs.path;
        for u in pivots(&list).filter(|&u| u != v && !runs.with.is_matched(u) && runs.without.is_matched(u)) {
            let k = p.len();
            t.check(p.last() == u && k % 2 == 0, || format!("victim {u} of pivot {v} not at the even end of {:?}", p.vertices))?;
            let blockers = a.blockers_of(&list, u).msg()?;
            for i in (0..k).step_by(2) {
                let w = p.vertices[i];
                let rerun = a.run(&list.exclude(&[w]).msg()?);
                t.check(rerun.is_matched(u) && blockers.contains(&w), || {
                    format!("{u} is not the victim of u_{i} = {w} on path {:?}", p.vertices)
                })?;
            }
        }
    }
    Ok(t.0)
}

pub(super) fn blockers_l_prime(a: &Analyzer, inst: &LemmaInstance) -> Outcome {
    let list = inst.query_list().msg()?;
    let g = a.graph;
    let mut t = Tally::default();
    let base = a.run(&list);
    for v in pivots(&list).filter(|&v| !base.is_matched(v)) {
        let lv = list.exclude(&[v]).msg()?;
        let run_lv = a.run(&lv);
        for &u in g.neighbors(v).iter().filter(|&&u| !list.is_excluded(u)) {
            t.check(run_lv.is_matched(u), || format!("unmatched {v} has an unmatched neighbor {u}"))?;
            let w = run_lv.mate(u).unwrap();
            let b = a.backup_of(&lv, u).msg()?;
            if b.is_none_or(|b| list.pair_time(u, v) < list.pair_time(u, b)) {
                let rerun = a.run(&list.exclude(&[w]).msg()?);
                t.check(rerun.is_matched(v), || format!("unmatched {v} is not the victim of {w}, the match of {u}"))?;
            }
        }
    }
    let Some((x, ctx)) = inst.ranked() else { return Ok(t.0) };
    for v in pivots(&list) {
        let runs = a.alternating_path_runs(&list, v).msg()?;
        let p = &runs.path;
        let mut outcomes = None;
        for &u in g.neighbors(v) {
            let Some(j) = p.index_of(u).filter(|j| j % 2 == 0 && *j >= 2) else { continue };
            let b = p.vertices.get(j + 1).copied();
            let outcomes = match &mut outcomes {
                Some(o) => o,
                None => outcomes.insert(a.insertion_outcomes(&x, v, &ctx, &[]).msg()?),
            };
            for o in outcomes.iter() {
                if o.trace.is_matched(v) || b.is_some_and(|b| o.list.pair_time(u, v) > o.list.pair_time(u, b)) {
                    continue;
                }
                t.check(o.reference.mates() == runs.without.mates(), || format!("re-ranking {v} changed R(L-v)"))?;
                for i in (1..j).step_by(2) {
                    let ui = p.vertices[i];
                    let rerun = a.run(&o.list.exclude(&[ui]).msg()?);
                    t.check(rerun.is_matched(v), || {
                        format!("{v} re-ranked to {} is not the victim of u_{i} = {ui}, path {:?}", o.x, p.vertices)
                    })?;
                }
            }
        }
    }
    Ok(t.0)
}

pub(super) fn ranking_path_monotone(a: &Analyzer, inst: &LemmaInstance) -> Outcome {
    let list = inst.query_list().msg()?;
    let Some((x, _)) = inst.ranked() else { return Err("not a ranked instance".into()) };
    let mut t = Tally::default();
    for v in pivots(&list) {
        let runs = a.alternating_path_runs(&list, v).msg()?;
        let p = &runs.path;
        for w in p.vertices.windows(3) {
            t.check(x.get(w[0]) < x.get(w[2]), || format!("ranks not increasing along {:?}", p.vertices))?;
        }
        for u in pivots(&list).filter(|&u| u != v) {
            let by_rank = match (runs.without.mate(u), runs.with.mate(u)) {
                (Some(_), None) => true,
                (Some(m0), Some(m1)) => x.get(m1) > x.get(m0),
                (None, _) => false,
            };
            t.check(by_rank == runs.with.worse_off_than(&runs.without, u), || {
                format!("pivot {v}: rank and time notions of worse off disagree for {u}")
            })?;
        }
    }
    Ok(t.0)
}

fn rank_of(x: &RankVector, w: Option<Vertex>) -> Option<f64> {
    w.map(|w| x.get(w))
}

pub(super) fn ranking_insertion(a: &Analyzer, inst: &LemmaInstance) -> Outcome {
    let Some((x, ctx)) = inst.ranked() else { return Err("not a ranked instance".into()) };
    let mut t = Tally::default();
    for (u, us) in inst.partner_pairs() {
        let outcomes = a.insertion_outcomes(&x, us, &ctx, &[]).msg()?;
        let reference = &outcomes[0].reference;
        let xu = x.get(u);
        let v = reference.mate(u);
        let mut previous = f64::NEG_INFINITY;
        for o in &outcomes {
            t.check(o.reference.mates() == reference.mates(), || "reference run depends on the inserted rank".into())?;
            let r = &o.ranks;
            let star = rank_of(r, o.trace.mate(us));
            match v {
                Some(v) => {
                    let xv = r.get(v);
                    if o.x < xv {
                        t.check(star.is_some_and(|q| q <= xu), || format!("u*={us} at {} below x_v: match rank {star:?} > x_u", o.x))?;
                    }
                    if o.x > xu {
                        let mine = rank_of(r, o.trace.mate(u));
                        t.check(mine.is_some_and(|q| q <= xv), || format!("u*={us} at {} above x_u: u={u} match rank {mine:?}", o.x))?;
                    }
                    if o.trace.worse_off_than(&o.reference, u) {
                        t.check(star.is_some_and(|q| q <= xv), || format!("u={u} worse off but u* match rank {star:?} > x_v"))?;
                    }
                }
                None => {
                    t.check(star.is_some_and(|q| q <= xu), || format!("u={u} unmatched but u*={us} match rank {star:?}"))?;
                }
            }
            let current = star.unwrap_or(f64::INFINITY);
            t.check(current >= previous, || format!("u*={us} match rank decreased when demoted to {}", o.x))?;
            previous = current;
            let y = o.lo + 0.25 * (o.hi - o.lo);
            let spot = a.run(&ctx.list(&x.with_rank(us, y).msg()?).msg()?);
            t.check(spot.mates() == o.trace.mates(), || format!("outcome not constant on ({}, {})", o.lo, o.hi))?;
        }
    }
    Ok(t.0)
}

fn decides_before(ctx: &Context, u: Vertex, us: Vertex) -> bool {
    match ctx {
        Context::Ranking => true,
        Context::Franking { decision_order } => {
            let pos = |w| decision_order.iter().position(|&z| z == w);
            pos(u) < pos(us)
        }
    }
}

pub(super) fn profile_monotonicity(a: &Analyzer, inst: &LemmaInstance) -> Outcome {
    let Some((x, ctx)) = inst.ranked() else { return Err("not a ranked instance".into()) };
    let franking = matches!(ctx, Context::Franking { .. });
    let n = x.len();
    let mut t = Tally::default();
    for (u, us) in inst.partner_pairs().into_iter().filter(|&(u, us)| decides_before(&ctx, u, us)) {
        let l = ctx.list(&x).msg()?.exclude(&[us]).msg()?;
        let base = a.run(&l);
        let Some(v) = base.mate(u) else { continue };
        if franking && !base.is_active(u) {
            continue;
        }
        let b = a.backup_of(&l, u).msg()?;
        let (xv, hi) = (x.get(v), b.map_or(1.0, |b| x.get(b)));
        let mut cuts: Vec<f64> = (0..n).filter(|&w| w != v).map(|w| x.get(w)).filter(|&r| xv < r && r < hi).collect();
        cuts.push(xv);
        cuts.push(hi);
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let mut ys: Vec<f64> = cuts.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
        if b.is_none() && (0..n).all(|w| x.get(w) != 1.0) {
            ys.push(1.0);
        }
        for y in ys {
            let demoted = a.run(&ctx.list(&x.with_rank(v, y).msg()?).msg()?.exclude(&[us]).msg()?);
            t.check(demoted.mates() == base.mates(), || {
                format!("demoting match {v} of {u} from {xv} to {y} (backup {b:?}) changed the matching")
            })?;
        }
    }
    Ok(t.0)
}

pub(super) fn franking_insertion(a: &Analyzer, inst: &LemmaInstance) -> Outcome {
    let Some((x, ctx)) = inst.ranked() else { return Err("not a ranked instance".into()) };
    let mut t = Tally::default();
    for (u, us) in inst.partner_pairs().into_iter().filter(|&(u, us)| decides_before(&ctx, u, us)) {
        let outcomes = a.insertion_outcomes(&x, us, &ctx, &[]).msg()?;
        let reference = &outcomes[0].reference;
        let v = reference.mate(u);
        let u_active = reference.is_active(u);
        let mut left_passive = false;
        for o in &outcomes {
            let passive = o.trace.is_matched(us) && !o.trace.is_active(us);
            if let Some(v) = v {
                if u_active && o.x < x.get(v) {
                    t.check(passive, || format!("u={u} active with {v}; u*={us} at {} not passive", o.x))?;
                }
                if !passive {
                    t.check(o.trace.mate(u) == Some(v), || format!("u*={us} at {} not passive yet u={u} lost {v}", o.x))?;
                }
                if u_active && o.trace.worse_off_than(&o.reference, u) {
                    let ok = match o.trace.mate(u) {
                        None => true,
                        Some(m) => o.trace.is_active(u) && o.ranks.get(m) > x.get(v),
                    };
                    t.check(ok, || format!("active u={u} worse off but matched to {:?} passively or above", o.trace.mate(u)))?;
                }
            }
            t.check(!(passive && left_passive), || format!("u*={us} passive again at {} after a gap", o.x))?;
            left_passive |= !passive;
        }
    }
    Ok(t.0)
}

pub(super) fn six_profiles(a: &Analyzer, inst: &LemmaInstance) -> Outcome {
    let Some((x, ctx)) = inst.ranked() else { return Err("not a ranked instance".into()) };
    let n = x.len();
    let mut t = Tally::default();
    for u in 0..n {
        for us in (0..n).filter(|&w| w != u) {
            let p = match &ctx {
                Context::Ranking => a.ranking_profile(&x, u, us).msg()?,
                Context::Franking { decision_order } => {
                    if !decides_before(&ctx, u, us) {
                        continue;
                    }
                    let p = a.franking_profile(decision_order, &x, u, us).msg()?;
                    t.check(p.kind().is_some(), || format!("profile of {u} outside the six classes"))?;
                    p
                }
            };
            t.check(p.b.is_none() || p.v.is_some(), || format!("profile of {u} has a backup without a match"))?;
        }
    }
    Ok(t.0)
}

pub(super) fn marginal_split(a: &Analyzer, inst: &LemmaInstance) -> Outcome {
    let Some((x, ctx)) = inst.ranked() else { return Err("not a ranked instance".into()) };
    let Context::Franking { decision_order } = &ctx else { return Err("not an FRanking instance".into()) };
    let mut t = Tally::default();
    for (u, us) in inst.partner_pairs().into_iter().filter(|&(u, us)| decides_before(&ctx, u, us)) {
        let theta = a.marginal_rank(&x, u, us, &ctx).msg()?;
        for o in a.insertion_outcomes(&x, u, &ctx, &[us]).msg()? {
            let passive = o.trace.is_matched(u) && !o.trace.is_active(u);
            if o.hi <= theta {
                t.check(passive, || format!("u={u} at {} below marginal rank {theta} not passive", o.x))?;
            }
            if o.lo >= theta {
                t.check(!passive, || format!("u={u} at {} above marginal rank {theta} passive", o.x))?;
            }
            let kind = a.franking_profile(decision_order, &o.ranks, u, us).msg()?.kind();
            let class_p =
                matches!(kind, Some(ProfileKind::PassiveNoBackup | ProfileKind::PassivePassive | ProfileKind::PassiveActive));
            t.check(class_p == passive, || format!("profile class {kind:?} disagrees with passive = {passive}"))?;
        }
    }
    Ok(t.0)
}

pub(super) fn theta_facts(a: &Analyzer, inst: &LemmaInstance) -> Outcome {
    let Some((x, ctx)) = inst.ranked() else { return Err("not a ranked instance".into()) };
    let ranking = matches!(ctx, Context::Ranking);
    let mut t = Tally::default();
    for (u, us) in inst.partner_pairs().into_iter().filter(|&(u, us)| decides_before(&ctx, u, us)) {
        let report = a.thresholds(&x, u, us, &ctx).msg()?;
        let outcomes = a.insertion_outcomes(&x, us, &ctx, &[]).msg()?;
        let reference = &outcomes[0].reference;
        let matched = reference.is_matched(u);
        t.check(report.u_matched_without_ustar == matched, || "matched flag disagrees".into())?;
        let mut worse = Vec::new();
        let mut theta0 = 0.0f64;
        for o in &outcomes {
            if matched && o.trace.worse_off_than(&o.reference, u) {
                let path = a.path_from_runs(&o.trace, &o.reference, us).msg()?;
                let j = path.index_of(u).filter(|j| j % 2 == 0 && *j >= 2);
                t.check(j.is_some(), || format!("worse-off u={u} at bad index on {:?}", path.vertices))?;
                theta0 = theta0.max(o.hi);
                worse.push((o, path, j.unwrap()));
            }
        }
        let (th0, th1, th3) = (report.theta0, report.theta1, report.theta3);
        t.check(theta0 == th0, || format!("theta0 {th0} but recomputed {theta0}"))?;
        let r2 = |p: &AlternatingPath| x.get(p.vertices[2]);
        if th0 > 0.0 {
            let w = report.witness0.as_ref();
            t.check(w.is_some_and(|w| w.hi == th0 && r2(&w.path) == th0), || {
                format!("third vertex on the theta0 witness does not have rank {th0}")
            })?;
        }
        if ranking {
            let xu = x.get(u);
            t.check(th0 <= xu, || format!("theta0 {th0} above x_u {xu}"))?;
            t.check(th3 <= th0, || format!("theta3 {th3} above theta0 {th0}"))?;
            for (o, path, _) in &worse {
                t.check(r2(path) <= th0, || format!("third vertex rank {} above theta0 {th0} at {}", r2(path), o.x))?;
                if th0 > 0.0 && th0 < xu {
                    let m = o.trace.mate(us);
                    t.check(m.is_some() && m != reference.mate(u), || format!("u* at {} matched to {m:?}", o.x))?;
                }
            }
            let mut theta3 = 0.0f64;
            for (o, path, j) in worse.iter().filter(|(o, p, j)| o.ranks.get(p.vertices[j - 2]) > th0) {
                theta3 = theta3.max(o.hi);
                t.check(*j >= 6, || format!("length-6 threshold path {:?} too short", path.vertices))?;
            }
            t.check(theta3 == th3, || format!("theta3 {th3} but recomputed {theta3}"))?;
            for (o, path, _) in worse.iter().filter(|(o, p, j)| o.ranks.get(p.vertices[j - 2]) > th0) {
                t.check(r2(path) <= th3, || format!("third vertex rank above theta3 {th3} at {}", o.x))?;
            }
            if th3 > 0.0 {
                let w = report.witness3.as_ref();
                t.check(w.is_some_and(|w| r2(&w.path) == th3), || format!("theta3 witness third vertex not at {th3}"))?;
            }
        } else {
            t.check(th0 <= th1, || format!("theta0 {th0} above theta1 {th1}"))?;
            if let Some(v) = reference.mate(u).filter(|_| reference.is_active(u)) {
                t.check(th1 >= x.get(v), || format!("theta1 {th1} below active match rank {}", x.get(v)))?;
            }
            if let Some(w) = report.witness0.as_ref().filter(|_| th0 > 0.0) {
                let (u1, u2) = (w.path.vertices[1], w.path.vertices[2]);
                t.check(reference.mate(u2) == Some(u1) && !reference.is_active(u2), || {
                    format!("u2={u2} not passively matched to u1={u1} without u*")
                })?;
            }
        }
    }
    Ok(t.0)
}

pub(super) fn odd_girth_path(a: &Analyzer, inst: &LemmaInstance) -> Outcome {
    let list = inst.query_list().msg()?;
    let girth = odd_girth(a.graph);
    let mut t = Tally::default();
    for v in pivots(&list) {
        let p = a.alternating_path(&list, v).msg()?;
        for j in (2..=p.len()).step_by(2) {
            if a.graph.has_edge(p.vertices[j], v) {
                t.check(girth.is_some_and(|l| l <= j + 1), || {
                    format!("path {:?} closes an odd cycle of length {} below odd girth {girth:?}", p.vertices, j + 1)
                })?;
            }
        }
    }
    Ok(t.0)
}

pub(super) fn fully_online(a: &Analyzer, inst: &LemmaInstance) -> Outcome {
    let ListSpec::FullyOnline { schedule, seed } = &inst.list else { return Err("not a fully online instance".into()) };
    let out = fully_online_match(a.graph, schedule, *seed).msg()?;
    let list = franking_list(&schedule.deadline_order(), &out.ranks).msg()?;
    let offline = (a.engine)(&out.effective_graph, &list);
    let mut t = Tally::default();
    t.check(offline == out.trace, || {
        format!("fully online {:?} differs from FRanking {:?}", out.trace.pairs(), offline.pairs())
    })?;
    Ok(t.0)
}

pub(super) fn removal_monotone(a: &Analyzer, inst: &LemmaInstance) -> Outcome {
    let list = inst.query_list().msg()?;
    let g = a.graph;
    let mut t = Tally::default();
    let base = a.run(&list);
    for (p, q) in g.edges() {
        t.check(base.is_matched(p) || base.is_matched(q), || format!("edge ({p},{q}) left with both ends free"))?;
    }
    let opt = maximum_matching_size(g).msg()?;
    t.check(2 * base.size() >= opt, || format!("greedy size {} below half of {opt}", base.size()))?;
    for v in pivots(&list) {
        let smaller = a.run(&list.exclude(&[v]).msg()?).size();
        t.check(base.size() >= smaller, || format!("removing {v} grew the matching"))?;
    }
    Ok(t.0)
}
