//! Discretized factor-revealing LPs for Ranking and FRanking.

use super::model::{frac, q, Bound, Expr, LpModel, Sense, Tag, Variant};
use crate::error::{Error, Result};

/// Simple Ranking LP.
pub fn build_ranking_lp(n: usize) -> Result<LpModel> {
    ranking(n, Variant::Simple)
}

/// Ranking LP with the length-6 compensation families for the no-backup profiles.
pub fn build_tightened_ranking_lp(n: usize) -> Result<LpModel> {
    ranking(n, Variant::Tightened)
}

/// Ranking LP for graphs of odd girth at least 2k+1.
pub fn build_odd_girth_ranking_lp(n: usize, k: u32) -> Result<LpModel> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("odd-girth LP needs k >= 2, got {k}")));
    }
    ranking(n, Variant::OddGirth(k))
}

/// FRanking LP.
pub fn build_franking_lp(n: usize) -> Result<LpModel> {
    check_n(n)?;
    Ok(Franking::new(n).build())
}

/// Builds the model for `variant`.
pub fn build(variant: Variant, n: usize) -> Result<LpModel> {
    match variant {
        Variant::Simple => build_ranking_lp(n),
        Variant::Tightened => build_tightened_ranking_lp(n),
        Variant::OddGirth(k) => build_odd_girth_ranking_lp(n, k),
        Variant::Franking => build_franking_lp(n),
        Variant::Custom => Err(Error::InvalidParameter("custom models have no builder".into())),
    }
}

fn check_n(n: usize) -> Result<()> {
    // Index arithmetic uses i64 coefficients with denominators up to n².
    if n == 0 || n > 1000 {
        return Err(Error::InvalidParameter(format!("discretization n must be in 1..=1000, got {n}")));
    }
    Ok(())
}

fn ranking(n: usize, variant: Variant) -> Result<LpModel> {
    check_n(n)?;
    let mut r = Ranking { m: LpModel::new(variant, n), n };
    r.declare();
    r.function_constraints();
    r.definitions();
    r.unmatched();
    match variant {
        Variant::Tightened => r.no_backup_tightened(),
        _ => r.no_backup(),
    }
    r.backup();
    r.aggregation();
    let m = r.m;
    debug_assert!(m.validate().is_ok());
    Ok(m)
}

struct Ranking {
    m: LpModel,
    n: usize,
}

impl Ranking {
    fn nn(&self) -> i64 {
        self.n as i64
    }

    fn g(&mut self, i: usize, j: usize) -> usize {
        self.m.var(&format!("g_{i}_{j}"), Bound::NonNeg)
    }

    fn h(&mut self, k: usize, l: usize) -> usize {
        self.m.var(&format!("h_{k}_{l}"), Bound::NonNeg)
    }

    fn gb(&mut self, i: usize, j: usize) -> usize {
        self.m.var(&format!("gB_{i}_{j}"), Bound::Free)
    }

    fn gp(&mut self, i: usize, j: usize) -> usize {
        self.m.var(&format!("gP_{i}_{j}"), Bound::Free)
    }

    fn free(&mut self, name: String) -> usize {
        self.m.var(&name, Bound::Free)
    }

    fn odd_k(&self) -> Option<i64> {
        match self.m.variant {
            Variant::OddGirth(k) => Some(k as i64),
            _ => None,
        }
    }

    /// Weight of the extra compensation copies: max{k-2, 0}, or 0 outside odd girth.
    fn extra(&self) -> i64 {
        self.odd_k().map_or(0, |k| (k - 2).max(0))
    }

    fn no_backup_var(&mut self, iu: usize, iv: usize) -> usize {
        let prefix = match self.m.variant {
            Variant::Tightened => "GTv",
            Variant::OddGirth(_) => "Gkv",
            _ => "Gv",
        };
        self.free(format!("{prefix}_{iu}_{iv}"))
    }

    fn backup_var(&mut self, iu: usize, iv: usize, ib: usize) -> usize {
        let prefix = if self.odd_k().is_some() { "Gkvb" } else { "Gvb" };
        self.free(format!("{prefix}_{iu}_{iv}_{ib}"))
    }

    fn declare(&mut self) {
        let n = self.n;
        for i in 1..=n {
            for j in 1..=n {
                self.g(i, j);
            }
        }
        for k in 0..=n {
            for l in 0..=n {
                self.h(k, l);
            }
        }
        for i in 1..=n {
            for j in 1..=n {
                self.gb(i, j);
            }
        }
        for i in 1..=n {
            for j in 1..=n {
                self.gp(i, j);
            }
        }
    }

    fn function_constraints(&mut self) {
        let n = self.n;
        for i in 1..=n {
            for j in 1..n {
                let (a, b) = (self.g(i, j), self.g(i, j + 1));
                self.m.add(Tag::new("mono_g", &[i, j]), [(a, q(1)), (b, q(-1))], Sense::Le, q(0));
            }
        }
        for k in 0..=n {
            for l in 0..n {
                let (a, b) = (self.h(k, l), self.h(k, l + 1));
                self.m.add(Tag::new("mono_h", &[k, l]), [(a, q(1)), (b, q(-1))], Sense::Le, q(0));
            }
        }
        for i in 1..n {
            for j in 1..=n {
                let (a, b) = (self.g(i, j), self.g(i + 1, j));
                self.m.add(Tag::new("anti_g", &[i, j]), [(a, q(1)), (b, q(-1))], Sense::Ge, q(0));
            }
        }
        for k in 0..n {
            for l in 0..=n {
                let (a, b) = (self.h(k, l), self.h(k + 1, l));
                self.m.add(Tag::new("anti_h", &[k, l]), [(a, q(1)), (b, q(-1))], Sense::Ge, q(0));
            }
        }
        for k in 0..=n {
            let a = self.h(k, 0);
            self.m.add(Tag::new("pin_h", &[k]), [(a, q(1))], Sense::Eq, q(0));
        }
        let c = q(self.odd_k().unwrap_or(4));
        let h1n = self.h(1, n);
        for i in 1..=n {
            for j in 1..=n {
                let (g, hij, hji) = (self.g(i, j), self.h(i, j), self.h(j, i));
                self.m.add(Tag::new("cap_b", &[i, j]), [(g, q(-1)), (hij, q(-1)), (h1n, -c)], Sense::Ge, q(-1));
                self.m.add(Tag::new("cap_p", &[i, j]), [(g, q(1)), (hji, q(-1)), (h1n, -c)], Sense::Ge, q(0));
            }
        }
    }

    fn definitions(&mut self) {
        let n = self.n;
        for i in 1..=n {
            for j in 1..=n {
                let (b, g, hij) = (self.gb(i, j), self.g(i, j), self.h(i, j));
                self.m.add(Tag::new("def_gb", &[i, j]), [(b, q(1)), (g, q(1)), (hij, q(1))], Sense::Eq, q(1));
            }
        }
        for i in 1..=n {
            for j in 1..=n {
                let (p, g, hji) = (self.gp(i, j), self.g(i, j), self.h(j, i));
                self.m.add(Tag::new("def_gp", &[i, j]), [(p, q(1)), (g, q(-1)), (hji, q(1))], Sense::Eq, q(0));
            }
        }
    }

    fn unmatched(&mut self) {
        let n = self.n;
        for iu in 1..=n {
            let mut e = Expr::new();
            for j in 1..=n {
                e.t(1, self.gp(iu, j));
            }
            let v = self.free(format!("G0_{iu}"));
            self.m.add_bound(Tag::new("u0", &[iu]), v, &e);
        }
    }

    /// Adds `Σ_{j=from}^{to} gP(i,j)`.
    fn sum_gp(&mut self, e: &mut Expr, i: usize, from: usize, to: usize) {
        for j in from..=to {
            e.t(1, self.gp(i, j));
        }
    }

    fn sum_g(&mut self, e: &mut Expr, i: usize, to: usize) {
        for j in 1..=to {
            e.t(1, self.g(i, j));
        }
    }

    fn no_backup(&mut self) {
        let (n, nn, ex) = (self.n, self.nn(), self.extra());
        let odd = self.odd_k().is_some();
        for iu in 1..=n {
            for iv in 1..=n {
                let var = self.no_backup_var(iu, iv);
                if iu <= iv {
                    for t0 in 0..=iu {
                        let mut e = Expr::new();
                        self.sum_gp(&mut e, iu, 1, iv - 1);
                        e.t(frac(1, 2), self.gp(iu, iv));
                        let w = nn - iv as i64;
                        e.t(w, self.h(iu, t0)).t(w, self.h(iv, iu));
                        for j in 1..=t0 {
                            e.t(1, self.h(j, iu));
                        }
                        e.t(t0 as i64, self.h(iu, iv)).t(nn - t0 as i64, self.gb(iu, iv));
                        e.t(w * ex, self.h(iv, t0)).t(t0 as i64 * ex, self.h(iu, 1));
                        self.m.add_bound(Tag::new("nb1", &[iu, iv, t0]), var, &e);
                    }
                }
                if iv <= iu {
                    for t0 in 0..=iu {
                        let mut e = Expr::new();
                        self.sum_g(&mut e, iv, t0);
                        self.sum_gp(&mut e, iu, t0 + 1, iv.saturating_sub(1));
                        let c = nn - t0.max(iv - 1) as i64;
                        e.t(c, self.h(iv, t0)).t(c, self.h(iv, iu));
                        e.t(t0 as i64, self.h(iu, iv)).t(nn - t0 as i64, self.gb(iu, iv));
                        e.t(c * ex, self.h(iv, t0)).t(t0 as i64 * ex, self.h(iu, 1));
                        self.m.add_bound(Tag::new("nb2", &[iu, iv, t0]), var, &e);
                    }
                    if !odd {
                        for t0 in iu - 1..=iu {
                            let e = self.nb_edge(iu, iv, t0);
                            self.m.add_bound(Tag::new("nb3", &[iu, iv, t0]), var, &e);
                        }
                    }
                }
            }
        }
    }

    /// Right-hand side shared by the no-backup families with θ₀ at u's interval.
    fn nb_edge(&mut self, iu: usize, iv: usize, t0: usize) -> Expr {
        let nn = self.nn();
        let mut e = Expr::new();
        self.sum_g(&mut e, iv, t0);
        e.t(nn - t0 as i64, self.h(iv, iu)).t(nn - t0 as i64, self.gb(iu, iv));
        e
    }

    fn no_backup_tightened(&mut self) {
        let (n, nn) = (self.n, self.nn());
        for iu in 1..=n {
            for iv in 1..=n {
                let var = self.no_backup_var(iu, iv);
                if iu <= iv {
                    for t0 in 0..=iu {
                        for t3 in 0..=t0 {
                            let mut e = Expr::new();
                            self.sum_gp(&mut e, iu, 1, iv - 1);
                            e.t(frac(1, 2), self.gp(iu, iv));
                            e.t(nn - t0 as i64, self.gb(iu, iv));
                            let w = nn - iv as i64;
                            if t3 < t0 {
                                e.t(w, self.h(iu, t0));
                            }
                            e.t(w, self.h(iv, iu)).t(w, self.h(iu, t3)).t(w, self.h(iv, t3));
                            for j in 1..=t0 {
                                e.t(1, self.h(j, iu));
                            }
                            e.t(t3 as i64, self.h((t3 + 1).min(iu), 1)).t(t3 as i64, self.h(iu, iv));
                            if t3 < t0 {
                                e.t((t0 - t3) as i64, self.h((t0 + 1).min(iu), iv));
                                self.m.add_bound(Tag::new("nbt1", &[iu, iv, t0, t3]), var, &e);
                            } else {
                                self.m.add_bound(Tag::new("nbt2", &[iu, iv, t0]), var, &e);
                            }
                        }
                    }
                }
                if iv <= iu {
                    for t0 in 0..=iu {
                        for t3 in 0..=t0 {
                            let mut e = Expr::new();
                            self.sum_g(&mut e, iv, t0);
                            self.sum_gp(&mut e, iu, t0 + 1, iv.saturating_sub(1));
                            e.t(nn - t0 as i64, self.gb(iu, iv));
                            let c = nn - t0.max(iv - 1) as i64;
                            if t3 < t0 {
                                e.t(c, self.h(iv, t0));
                            }
                            e.t(c, self.h(iv, iu)).t(2 * c, self.h(iv, t3));
                            e.t(t3 as i64, self.h((t3 + 1).min(iu), 1)).t(t3 as i64, self.h(iu, iv));
                            if t3 < t0 {
                                e.t((t0 - t3) as i64, self.h((t0 + 1).min(iu), iv));
                                self.m.add_bound(Tag::new("nbt3", &[iu, iv, t0, t3]), var, &e);
                            } else {
                                self.m.add_bound(Tag::new("nbt4", &[iu, iv, t0]), var, &e);
                            }
                        }
                    }
                    for t0 in iu - 1..=iu {
                        let e = self.nb_edge(iu, iv, t0);
                        self.m.add_bound(Tag::new("nbt5", &[iu, iv, t0]), var, &e);
                    }
                }
            }
        }
    }

    fn backup(&mut self) {
        let (n, nn, ex) = (self.n, self.nn(), self.extra());
        let odd = self.odd_k().is_some();
        for iu in 1..=n {
            for iv in 1..=n {
                for ib in iv..=n {
                    let var = self.backup_var(iu, iv, ib);
                    if iu <= iv {
                        for t0 in 0..=iu {
                            let mut e = Expr::new();
                            self.sum_gp(&mut e, iu, 1, iv - 1);
                            if iv < ib {
                                e.t(frac(1, 2), self.gp(iu, iv));
                                let c = (ib - iv - 1) as i64;
                                e.t(c, self.h(iu, t0)).t(c, self.h(iv, iu));
                                e.t(c * ex, self.h(iv, t0));
                            }
                            e.t(t0 as i64, self.gb(iu, ib)).t(nn - t0 as i64, self.gb(iu, iv));
                            let label = if iv < ib { "b11" } else { "b12" };
                            self.m.add_bound(Tag::new(label, &[iu, iv, ib, t0]), var, &e);
                        }
                    }
                    if iv <= iu {
                        for t0 in 0..=iu {
                            let mut e = Expr::new();
                            self.sum_gp(&mut e, iv, 1, t0);
                            self.sum_gp(&mut e, iu, t0 + 1, iv.saturating_sub(1));
                            let c = (ib as i64 - 1 - t0.max(iv - 1) as i64).max(0);
                            e.t(c, self.h(iv, t0)).t(c, self.h(iv, iu));
                            e.t(t0 as i64, self.gb(iu, ib)).t(nn - t0 as i64, self.gb(iu, iv));
                            e.t(c * ex, self.h(iv, t0));
                            self.m.add_bound(Tag::new("b2", &[iu, iv, ib, t0]), var, &e);
                        }
                        if !odd {
                            for t0 in iu - 1..=iu {
                                let mut e = Expr::new();
                                self.sum_gp(&mut e, iv, 1, t0);
                                e.t((ib as i64 - t0 as i64 - 1).max(0), self.h(iv, iu));
                                e.t(t0 as i64, self.gb(iu, ib)).t(nn - t0 as i64, self.gb(iu, iv));
                                self.m.add_bound(Tag::new("b3", &[iu, iv, ib, t0]), var, &e);
                            }
                        }
                    }
                }
            }
        }
    }

    fn aggregation(&mut self) {
        let n = self.n;
        let mut objective = Vec::with_capacity(n);
        for iu in 1..=n {
            let gu = self.free(format!("Gu_{iu}"));
            objective.push((gu, frac(1, n as i64)));
            let g0 = self.free(format!("G0_{iu}"));
            self.m.add(Tag::new("agg_u0", &[iu]), [(gu, q(1)), (g0, q(-1))], Sense::Le, q(0));
            for s in 1..=n {
                let w = frac(-1, (n + 1 - s) as i64);
                let mut terms = vec![(gu, q(1))];
                for j in s..=n {
                    terms.push((self.no_backup_var(iu, j), w));
                }
                self.m.add(Tag::new("agg_nb", &[iu, s]), terms, Sense::Le, q(0));
                for ib in s..=n {
                    let bbs = if ib < n { vec![ib + 1, ib] } else { vec![ib] };
                    for bb in bbs {
                        let w = frac(-1, (ib + 1 - s) as i64);
                        let mut terms = vec![(gu, q(1))];
                        for j in s..=ib {
                            terms.push((self.backup_var(iu, j, bb), w));
                        }
                        self.m.add(Tag::new("agg_b", &[iu, s, ib, bb]), terms, Sense::Le, q(0));
                    }
                }
            }
        }
        self.m.set_objective(objective);
    }
}

struct Franking {
    m: LpModel,
    n: usize,
}

impl Franking {
    fn new(n: usize) -> Self {
        Franking { m: LpModel::new(Variant::Franking, n), n }
    }

    fn g(&mut self, i: usize) -> usize {
        self.m.var(&format!("g_{i}"), Bound::NonNeg)
    }

    fn h(&mut self, k: usize) -> usize {
        self.m.var(&format!("h_{k}"), Bound::NonNeg)
    }

    fn free(&mut self, name: String) -> usize {
        self.m.var(&name, Bound::Free)
    }

    /// Adds `c·(1 - g(i) - h(i))`.
    fn gb(&mut self, e: &mut Expr, c: i64, i: usize) {
        e.k(c).t(-c, self.g(i)).t(-c, self.h(i));
    }

    fn sum_g(&mut self, e: &mut Expr, to: usize) {
        for k in 1..=to {
            e.t(1, self.g(k));
        }
    }

    fn build(mut self) -> LpModel {
        let n = self.n;
        let nn = n as i64;
        for i in 1..=n {
            self.g(i);
        }
        for k in 0..=n {
            self.h(k);
        }
        for i in 1..n {
            let (a, b) = (self.g(i), self.g(i + 1));
            self.m.add(Tag::new("fmono_g", &[i]), [(a, q(1)), (b, q(-1))], Sense::Le, q(0));
        }
        for i in 1..n {
            let (a, b) = (self.h(i), self.h(i + 1));
            self.m.add(Tag::new("fmono_h", &[i]), [(a, q(1)), (b, q(-1))], Sense::Le, q(0));
        }
        let h0 = self.h(0);
        self.m.add(Tag::new("fpin_h", &[]), [(h0, q(1))], Sense::Eq, q(0));
        let hn = self.h(n);
        for i in 1..=n {
            let (g, h) = (self.g(i), self.h(i));
            self.m.add(Tag::new("fcap_b", &[i]), [(g, q(-1)), (h, q(-1)), (hn, q(-1))], Sense::Ge, q(-1));
            self.m.add(Tag::new("fcap_p", &[i]), [(g, q(1)), (hn, q(-1))], Sense::Ge, q(0));
        }

        for iu in 1..=n {
            let mut e = Expr::new();
            self.sum_g(&mut e, n);
            let v = self.free(format!("F0_{iu}"));
            self.m.add_bound(Tag::new("fu0", &[iu]), v, &e);

            let mut e = Expr::new();
            e.t(nn, self.g(iu));
            let v = self.free(format!("FPP_{iu}"));
            self.m.add_bound(Tag::new("fpp", &[iu]), v, &e);

            let v = self.free(format!("FP0_{iu}"));
            for t0 in 0..=n {
                let mut e = Expr::new();
                self.sum_g(&mut e, t0);
                let w = nn - t0 as i64;
                e.t(w, self.h(t0)).t(w, self.g(iu));
                self.m.add_bound(Tag::new("fp0", &[iu, t0]), v, &e);
            }

            for ib in 1..=n {
                let v = self.free(format!("FPA_{iu}_{ib}"));
                for t0 in 0..=n {
                    let mut e = Expr::new();
                    self.sum_g(&mut e, t0);
                    e.t((ib as i64 - t0 as i64 - 1).max(0), self.h(t0));
                    self.gb(&mut e, t0 as i64, ib);
                    e.t(nn - t0 as i64, self.g(iu));
                    self.m.add_bound(Tag::new("fpa", &[iu, ib, t0]), v, &e);
                }
            }

            for iv in 1..=n {
                let v = self.free(format!("FA0_{iu}_{iv}"));
                for t1 in iv..=n {
                    for t0 in 0..=t1 {
                        self.active_no_backup(v, iu, iv, t0, t1);
                    }
                }
                for ib in iv..=n {
                    let v = self.free(format!("FAA_{iu}_{iv}_{ib}"));
                    for t1 in iv..=n {
                        for t0 in 0..=t1 {
                            self.active_backup(v, iu, iv, ib, t0, t1);
                        }
                    }
                }
            }
        }
        self.aggregation();
        debug_assert!(self.m.validate().is_ok());
        self.m
    }

    fn active_no_backup(&mut self, v: usize, iu: usize, iv: usize, t0: usize, t1: usize) {
        let nn = self.n as i64;
        let (t0i, t1i) = (t0 as i64, t1 as i64);
        let idx = [iu, iv, t0, t1];
        let base = |s: &mut Self, e: &mut Expr, top: usize, mult: i64| {
            s.sum_g(e, top);
            e.t(mult, s.h(t0)).t(t0i, s.h(iv));
        };
        let eq = t0 == t1;
        let (l1, l2) = if eq { ("fa0e_c1", "fa0e_c2") } else { ("fa0_c1", "fa0_c2") };

        let mut e = Expr::new();
        base(self, &mut e, t1, nn - t1i);
        e.t(t1i - t0i, self.g(iu));
        self.gb(&mut e, nn - t1i, iv);
        self.m.add_bound(Tag::new(l1, &idx), v, &e);

        let mut e = Expr::new();
        base(self, &mut e, t1, nn - t1i);
        self.gb(&mut e, nn - t0i, iv);
        self.m.add_bound(Tag::new(l2, &idx), v, &e);

        if !eq {
            let mut e = Expr::new();
            base(self, &mut e, t1 - 1, nn - t1i + 1);
            e.t(t1i - t0i - 1, self.g(iu));
            self.gb(&mut e, nn - t1i + 1, iv);
            self.m.add_bound(Tag::new("fa0_c3", &idx), v, &e);

            let mut e = Expr::new();
            base(self, &mut e, t1 - 1, nn - t1i + 1);
            self.gb(&mut e, nn - t0i, iv);
            self.m.add_bound(Tag::new("fa0_c4", &idx), v, &e);
        }
    }

    fn active_backup(&mut self, v: usize, iu: usize, iv: usize, ib: usize, t0: usize, t1: usize) {
        let nn = self.n as i64;
        let (t0i, t1i, ibi) = (t0 as i64, t1 as i64, ib as i64);
        let idx = [iu, iv, ib, t0, t1];
        let eq = t0 == t1;
        let right = |s: &mut Self, e: &mut Expr| {
            s.sum_g(e, t1);
            e.t((ibi - t1i - 1).max(0), s.h(t0));
        };
        let left = |s: &mut Self, e: &mut Expr| {
            s.sum_g(e, t1 - 1);
            e.t((ibi - t1i).max(0), s.h(t0));
        };
        let labels: [&str; 3] = if eq { ["faae_c1", "faae_c2", "faae_c3"] } else { ["faa_c1", "faa_c2", "faa_c3"] };

        // θ₁ at the right end of its interval.
        let mut e = Expr::new();
        right(self, &mut e);
        self.gb(&mut e, t0i, ib);
        self.gb(&mut e, t1i - t0i, iv);
        self.gb(&mut e, nn - t1i, iv);
        self.m.add_bound(Tag::new(labels[0], &idx), v, &e);

        let mut e = Expr::new();
        right(self, &mut e);
        self.gb(&mut e, t0i, ib);
        e.t(t1i - t0i, self.g(iu));
        self.gb(&mut e, nn - t1i, iv);
        self.m.add_bound(Tag::new(labels[1], &idx), v, &e);

        let mut e = Expr::new();
        right(self, &mut e);
        e.t(t0i, self.g(iu)).t(t1i - t0i, self.g(iu));
        self.gb(&mut e, nn - t1i, iv);
        self.m.add_bound(Tag::new(labels[2], &idx), v, &e);

        if eq {
            return;
        }
        // θ₁ just right of the left end of its interval.
        let mut e = Expr::new();
        left(self, &mut e);
        self.gb(&mut e, t0i, ib);
        self.gb(&mut e, t1i - t0i - 1, iv);
        self.gb(&mut e, nn - t1i + 1, iv);
        self.m.add_bound(Tag::new("faa_c4", &idx), v, &e);

        let mut e = Expr::new();
        left(self, &mut e);
        self.gb(&mut e, t0i, ib);
        e.t(t1i - t0i - 1, self.g(iu));
        self.gb(&mut e, nn - t1i + 1, iv);
        self.m.add_bound(Tag::new("faa_c5", &idx), v, &e);

        let mut e = Expr::new();
        left(self, &mut e);
        e.t(t0i, self.g(iu)).t(t1i - t0i - 1, self.g(iu));
        self.gb(&mut e, nn - t1i + 1, iv);
        self.m.add_bound(Tag::new("faa_c6", &idx), v, &e);
    }

    fn aggregation(&mut self) {
        let n = self.n;
        for iu in 1..=n {
            let p = self.free(format!("GFP_{iu}"));
            let a = self.free(format!("GFA_{iu}"));
            let fp0 = self.free(format!("FP0_{iu}"));
            self.m.add(Tag::new("fagg_p0", &[iu]), [(p, q(1)), (fp0, q(-1))], Sense::Le, q(0));
            let fpp = self.free(format!("FPP_{iu}"));
            self.m.add(Tag::new("fagg_pp", &[iu]), [(p, q(1)), (fpp, q(-1))], Sense::Le, q(0));
            for ib in 1..=n {
                let fpa = self.free(format!("FPA_{iu}_{ib}"));
                self.m.add(Tag::new("fagg_pa", &[iu, ib]), [(p, q(1)), (fpa, q(-1))], Sense::Le, q(0));
            }
            let f0 = self.free(format!("F0_{iu}"));
            self.m.add(Tag::new("fagg_u0", &[iu]), [(a, q(1)), (f0, q(-1))], Sense::Le, q(0));
            for s in 1..=n {
                let w = frac(-1, (n + 1 - s) as i64);
                let mut terms = vec![(a, q(1))];
                for iv in s..=n {
                    terms.push((self.free(format!("FA0_{iu}_{iv}")), w));
                }
                self.m.add(Tag::new("fagg_a0", &[iu, s]), terms, Sense::Le, q(0));
                for ib in s..=n {
                    let bbs = if ib < n { vec![ib, ib + 1] } else { vec![ib] };
                    for bb in bbs {
                        let w = frac(-1, (ib + 1 - s) as i64);
                        let mut terms = vec![(a, q(1))];
                        for iv in s..=ib {
                            terms.push((self.free(format!("FAA_{iu}_{iv}_{bb}")), w));
                        }
                        self.m.add(Tag::new("fagg_aa", &[iu, s, ib, bb]), terms, Sense::Le, q(0));
                    }
                }
            }
        }
        let w = self.free("W".into());
        for t in 0..=n {
            let mut terms = vec![(w, q(1))];
            for iu in 1..=n {
                let name = if iu <= t { format!("GFP_{iu}") } else { format!("GFA_{iu}") };
                terms.push((self.free(name), frac(-1, n as i64)));
            }
            self.m.add(Tag::new("fobj", &[t]), terms, Sense::Le, q(0));
        }
        self.m.set_objective([(w, q(1))]);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::model::FamilyGroup;
    use std::collections::HashSet;

    fn all_models(n: usize) -> Vec<LpModel> {
        vec![
            build_ranking_lp(n).unwrap(),
            build_tightened_ranking_lp(n).unwrap(),
            build_odd_girth_ranking_lp(n, 3).unwrap(),
            build_franking_lp(n).unwrap(),
        ]
    }

    #[test]
    fn models_validate_and_tags_are_known_and_unique() {
        for n in 1..=4 {
            for m in all_models(n) {
                m.validate().unwrap();
                let mut seen = HashSet::new();
                for c in m.constraints() {
                    assert!(c.tag.group().is_some(), "unknown family {}", c.tag.family);
                    assert!(seen.insert(c.tag.clone()), "duplicate tag {}", c.tag);
                }
            }
        }
    }

    #[test]
    fn ranking_tags_fall_in_six_groups() {
        let allowed = [
            FamilyGroup::Function,
            FamilyGroup::Definition,
            FamilyGroup::UnmatchedProfile,
            FamilyGroup::NoBackupProfile,
            FamilyGroup::BackupProfile,
            FamilyGroup::Aggregation,
        ];
        for m in all_models(3).into_iter().take(3) {
            assert!(m.constraints().iter().all(|c| allowed.contains(&c.tag.group().unwrap())));
        }
    }

    #[test]
    fn pins_present() {
        let m = build_ranking_lp(2).unwrap();
        assert_eq!(m.family_counts()["pin_h"], 3);
        let f = build_franking_lp(2).unwrap();
        assert_eq!(f.family_counts()["fpin_h"], 1);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(build_ranking_lp(0).is_err());
        assert!(build_odd_girth_ranking_lp(3, 1).is_err());
        assert!(build_odd_girth_ranking_lp(3, 2).is_ok());
    }

    #[test]
    fn odd_girth_drops_edge_families() {
        let m = build_odd_girth_ranking_lp(3, 2).unwrap();
        let c = m.family_counts();
        assert!(!c.contains_key("nb3") && !c.contains_key("b3"));
    }
}
