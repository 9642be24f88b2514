//! Dense two-phase simplex applied to the dual of the model.
//!
//! The factory's LPs have far more constraints than variables, so the dual
//! tableau (one row per model variable) is much smaller than the primal one.
//! Model values are read back from the dual multipliers.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::model::{Bound, LpModel, Sense};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub status: Status,
    /// NaN unless optimal.
    pub objective_value: f64,
    /// Empty unless optimal.
    pub assignment: BTreeMap<String, f64>,
    pub iterations: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveOptions {
    pub feasibility_tol: f64,
    pub max_iterations: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { feasibility_tol: 1e-9, max_iterations: 1_000_000 }
    }
}

/// Minimum magnitude of an admissible pivot element.
const PIVOT_TOL: f64 = 1e-9;
/// Consecutive degenerate pivots before switching to Bland's rule.
const DEGENERATE_RUN: usize = 50;
/// Primal infeasibility tolerated in the ratio test in exchange for larger pivots.
const HARRIS_SLACK: f64 = 1e-9;

/// Solves `model` with default options.
pub fn solve(model: &LpModel) -> Solution {
    solve_with(model, SolveOptions::default())
}

pub fn solve_with(model: &LpModel, opts: SolveOptions) -> Solution {
    let dual = DualProblem::new(model, false);
    let mut it = 0;
    match dual.run(opts, &mut it) {
        Outcome::Optimal(x) => {
            let values: Vec<f64> = x;
            let objective_value = model.objective().iter().map(|(v, c)| c.to_f64().unwrap() * values[*v]).sum();
            let violation = max_violation(model, &values);
            if violation > 10.0 * opts.feasibility_tol {
                log::warn!("recovered solution violates a constraint by {violation:e}");
            }
            let assignment = model.variables().iter().zip(&values).map(|(v, &x)| (v.name.clone(), x)).collect();
            Solution { status: Status::Optimal, objective_value, assignment, iterations: it }
        }
        Outcome::Infeasible => {
            // Dual infeasible: the model is unbounded or infeasible. Decide with a
            // zero objective, whose dual is always feasible.
            let status = match DualProblem::new(model, true).run(opts, &mut it) {
                Outcome::Optimal(_) => Status::Unbounded,
                Outcome::Unbounded => Status::Infeasible,
                Outcome::IterationLimit => Status::IterationLimit,
                Outcome::Infeasible => unreachable!("zero-objective dual is feasible"),
            };
            empty(status, it)
        }
        Outcome::Unbounded => empty(Status::Infeasible, it),
        Outcome::IterationLimit => empty(Status::IterationLimit, it),
    }
}

fn empty(status: Status, iterations: usize) -> Solution {
    Solution { status, objective_value: f64::NAN, assignment: BTreeMap::new(), iterations }
}

/// Largest violation of any constraint or bound by `x`, in floating point.
pub fn max_violation(model: &LpModel, x: &[f64]) -> f64 {
    let mut worst: f64 = 0.0;
    for c in model.constraints() {
        let lhs: f64 = c.terms.iter().map(|(v, a)| a.to_f64().unwrap() * x[*v]).sum();
        let rhs = c.rhs.to_f64().unwrap();
        let viol = match c.sense {
            Sense::Le => lhs - rhs,
            Sense::Ge => rhs - lhs,
            Sense::Eq => (lhs - rhs).abs(),
        };
        worst = worst.max(viol);
    }
    for (v, var) in model.variables().iter().enumerate() {
        if var.bound == Bound::NonNeg {
            worst = worst.max(-x[v]);
        }
    }
    worst
}

enum Outcome {
    Optimal(Vec<f64>),
    Infeasible,
    Unbounded,
    IterationLimit,
}

/// `min d·z  s.t.  M z = e, z >= 0`, with one row per model variable.
///
/// Columns: one per inequality (constraints normalized to `<=`), two per
/// equality, one surplus per non-negative model variable, then one
/// artificial per row.
struct DualProblem {
    rows: usize,
    /// Structural columns (excluding artificials).
    cols: usize,
    /// Row-major, `rows × (cols + rows + 1)`; the last entry of a row is its rhs.
    t: Vec<f64>,
    cost: Vec<f64>,
    /// Sign applied to each row to make its rhs non-negative.
    sign: Vec<f64>,
}

impl DualProblem {
    fn new(model: &LpModel, zero_objective: bool) -> Self {
        let rows = model.variables().len();
        let mut columns: Vec<(Vec<(usize, f64)>, f64)> = Vec::new();
        for c in model.constraints() {
            let terms: Vec<(usize, f64)> = c.terms.iter().map(|(v, a)| (*v, a.to_f64().unwrap())).collect();
            let rhs = c.rhs.to_f64().unwrap();
            let neg = |t: &[(usize, f64)]| t.iter().map(|&(v, a)| (v, -a)).collect::<Vec<_>>();
            match c.sense {
                Sense::Le => columns.push((terms, rhs)),
                Sense::Ge => columns.push((neg(&terms), -rhs)),
                Sense::Eq => {
                    columns.push((neg(&terms), -rhs));
                    columns.push((terms, rhs));
                }
            }
        }
        for (v, var) in model.variables().iter().enumerate() {
            if var.bound == Bound::NonNeg {
                columns.push((vec![(v, -1.0)], 0.0));
            }
        }
        let cols = columns.len();
        let width = cols + rows + 1;
        let mut t = vec![0.0; rows * width];
        let mut cost = vec![0.0; cols + rows];
        for (k, (entries, d)) in columns.iter().enumerate() {
            for &(r, a) in entries {
                t[r * width + k] += a;
            }
            cost[k] = *d;
        }
        let mut rhs = vec![0.0; rows];
        if !zero_objective {
            for (v, c) in model.objective() {
                rhs[*v] = c.to_f64().unwrap();
            }
        }
        let mut sign = vec![1.0; rows];
        for r in 0..rows {
            if rhs[r] < 0.0 {
                sign[r] = -1.0;
                for x in &mut t[r * width..r * width + cols] {
                    *x = -*x;
                }
            }
            t[r * width + cols + r] = 1.0;
            t[r * width + width - 1] = sign[r] * rhs[r];
        }
        DualProblem { rows, cols, t, cost, sign }
    }

    fn run(self, opts: SolveOptions, iterations: &mut usize) -> Outcome {
        let DualProblem { rows, cols, t, cost, sign } = self;
        let width = cols + rows + 1;
        // Phase-1 and phase-2 reduced-cost rows with the artificial basis.
        let mut phase1 = vec![0.0; width];
        for r in 0..rows {
            for k in 0..cols {
                phase1[k] -= t[r * width + k];
            }
            phase1[width - 1] -= t[r * width + width - 1];
        }
        let mut phase2 = vec![0.0; width];
        phase2[..cols + rows].copy_from_slice(&cost);
        let mut tab = Tableau { rows, width, t, basis: (cols..cols + rows).collect(), obj: [phase1, phase2] };

        let scale = 1.0 + (0..rows).map(|r| tab.rhs(r)).fold(0.0, f64::max);
        match tab.optimize(0, cols, opts, iterations) {
            Step::Done => {}
            Step::Unbounded => unreachable!("phase 1 is bounded below"),
            Step::Limit => return Outcome::IterationLimit,
        }
        if -tab.obj[0][width - 1] > opts.feasibility_tol * scale {
            return Outcome::Infeasible;
        }
        tab.evict_artificials(cols);
        match tab.optimize(1, cols, opts, iterations) {
            Step::Done => {}
            Step::Unbounded => return Outcome::Unbounded,
            Step::Limit => return Outcome::IterationLimit,
        }
        // The reduced cost of artificial r is minus the multiplier of row r.
        let x = (0..rows).map(|r| -sign[r] * tab.obj[1][cols + r]).collect();
        Outcome::Optimal(x)
    }
}

enum Step {
    Done,
    Unbounded,
    Limit,
}

struct Tableau {
    rows: usize,
    width: usize,
    t: Vec<f64>,
    basis: Vec<usize>,
    obj: [Vec<f64>; 2],
}

impl Tableau {
    fn rhs(&self, r: usize) -> f64 {
        self.t[r * self.width + self.width - 1]
    }

    fn at(&self, r: usize, k: usize) -> f64 {
        self.t[r * self.width + k]
    }

    /// Minimizes objective row `which` over columns `0..eligible`.
    fn optimize(&mut self, which: usize, eligible: usize, opts: SolveOptions, iterations: &mut usize) -> Step {
        let tol = opts.feasibility_tol;
        let mut degenerate = 0usize;
        loop {
            let bland = degenerate >= DEGENERATE_RUN;
            let reduced = &self.obj[which][..eligible];
            let entering = if bland {
                reduced.iter().position(|&r| r < -tol)
            } else {
                let mut best: Option<(usize, f64)> = None;
                for (k, &r) in reduced.iter().enumerate() {
                    if r < -tol && best.is_none_or(|(_, b)| r < b) {
                        best = Some((k, r));
                    }
                }
                best.map(|(k, _)| k)
            };
            let Some(k) = entering else { return Step::Done };
            if *iterations >= opts.max_iterations {
                return Step::Limit;
            }
            // Harris two-pass ratio test: bound the step with slightly relaxed
            // rhs, then take the largest pivot element within that bound.
            let mut bound = f64::INFINITY;
            for r in 0..self.rows {
                let a = self.at(r, k);
                if a > PIVOT_TOL {
                    bound = bound.min((self.rhs(r).max(0.0) + HARRIS_SLACK) / a);
                }
            }
            let mut leave: Option<(usize, f64, f64)> = None;
            for r in 0..self.rows {
                let a = self.at(r, k);
                if a > PIVOT_TOL {
                    let ratio = self.rhs(r).max(0.0) / a;
                    if ratio <= bound {
                        let better = match leave {
                            None => true,
                            Some((p, _, best)) => a > best || (a == best && self.basis[r] < self.basis[p]),
                        };
                        if better {
                            leave = Some((r, ratio, a));
                        }
                    }
                }
            }
            let leave = leave.map(|(p, ratio, _)| (p, ratio));
            let Some((p, ratio)) = leave else { return Step::Unbounded };
            if ratio <= tol {
                degenerate += 1;
            } else {
                degenerate = 0;
            }
            self.pivot(p, k);
            *iterations += 1;
        }
    }

    /// Pivots basic artificials out on any usable structural column.
    fn evict_artificials(&mut self, cols: usize) {
        for r in 0..self.rows {
            if self.basis[r] < cols {
                continue;
            }
            let best = (0..cols)
                .map(|k| (k, self.at(r, k).abs()))
                .filter(|&(_, a)| a > PIVOT_TOL)
                .fold(None, |acc: Option<(usize, f64)>, c| if acc.is_none_or(|a| c.1 > a.1) { Some(c) } else { acc });
            if let Some((k, _)) = best {
                self.pivot(r, k);
            }
        }
    }

    fn pivot(&mut self, p: usize, k: usize) {
        let w = self.width;
        let inv = 1.0 / self.t[p * w + k];
        let prow: Vec<f64> = self.t[p * w..(p + 1) * w].iter().map(|x| x * inv).collect();
        let nz: Vec<usize> = (0..w).filter(|&c| prow[c] != 0.0).collect();
        let sparse = nz.len() * 4 < w;
        let update = |row: &mut [f64]| {
            let f = row[k];
            if f == 0.0 {
                return;
            }
            if sparse {
                for &c in &nz {
                    row[c] -= f * prow[c];
                }
            } else {
                for (x, &y) in row.iter_mut().zip(&prow) {
                    *x -= f * y;
                }
            }
            row[k] = 0.0;
        };
        for (r, row) in self.t.chunks_exact_mut(w).enumerate() {
            if r != p {
                update(row);
            }
        }
        for row in &mut self.obj {
            update(row);
        }
        self.t[p * w..(p + 1) * w].copy_from_slice(&prow);
        self.t[p * w + k] = 1.0;
        self.basis[p] = k;
    }
}
