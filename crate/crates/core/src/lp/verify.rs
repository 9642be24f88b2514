//! Exact re-evaluation of a floating-point assignment against a model.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::model::{Bound, LpModel, Sense, Tag, Q};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub tag: Tag,
    pub amount: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    /// Largest violation over constraints and bounds, 0 if none.
    pub max_violation: f64,
    /// Constraints violated by more than the tolerance, worst first.
    pub violations: Vec<Violation>,
    /// Non-negative variables below `-tol`, with their values.
    pub bound_violations: Vec<(String, f64)>,
    /// Objective recomputed exactly from the assignment.
    pub objective: f64,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.bound_violations.is_empty()
    }
}

fn big(c: &Q) -> BigRational {
    BigRational::new(BigInt::from(*c.numer()), BigInt::from(*c.denom()))
}

/// Evaluates every constraint in exact arithmetic on the given values.
pub fn verify_solution(model: &LpModel, assignment: &BTreeMap<String, f64>, tol: f64) -> Result<VerifyReport> {
    let mut x = Vec::with_capacity(model.variables().len());
    for v in model.variables() {
        let val = *assignment.get(&v.name).ok_or_else(|| Error::MissingVariable(v.name.clone()))?;
        x.push(BigRational::from_float(val).ok_or_else(|| Error::InvalidParameter(format!("{} is not finite", v.name)))?);
    }
    let eval = |terms: &[(usize, Q)]| terms.iter().fold(BigRational::zero(), |acc, (v, c)| acc + big(c) * &x[*v]);
    let mut worst = 0.0f64;
    let mut violations = Vec::new();
    for c in model.constraints() {
        let diff = eval(&c.terms) - big(&c.rhs);
        let amount = match c.sense {
            Sense::Le => diff,
            Sense::Ge => -diff,
            Sense::Eq => diff.abs(),
        }
        .to_f64()
        .unwrap_or(f64::INFINITY);
        worst = worst.max(amount);
        if amount > tol {
            violations.push(Violation { tag: c.tag.clone(), amount });
        }
    }
    let mut bound_violations = Vec::new();
    for (v, var) in model.variables().iter().enumerate() {
        if var.bound == Bound::NonNeg && x[v].is_negative() {
            let val = x[v].to_f64().unwrap();
            worst = worst.max(-val);
            if -val > tol {
                bound_violations.push((var.name.clone(), val));
            }
        }
    }
    violations.sort_by(|a, b| b.amount.total_cmp(&a.amount).then_with(|| a.tag.cmp(&b.tag)));
    let objective = eval(model.objective()).to_f64().unwrap_or(f64::NAN);
    Ok(VerifyReport { max_violation: worst, violations, bound_violations, objective })
}
