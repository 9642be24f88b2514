use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Both sides of the discrete uniform lower bound.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UniformBoundReport {
    /// `Σ f·g·Δ`.
    pub lhs: BigRational,
    /// `(Σ g·Δ) · min_c avg(f[c..])`.
    pub rhs: BigRational,
    /// Start cell of the minimizing suffix.
    pub worst_suffix: usize,
    pub holds: bool,
}

/// Checks `Σ f·g·Δ ≥ (Σ g·Δ) · min over suffixes of the suffix average of f`
/// on `m` equal cells of `[a, b]`, in exact arithmetic. `g` must be
/// nonnegative and non-decreasing.
pub fn uniform_bound_check(
    f: &[BigRational],
    g: &[BigRational],
    a: &BigRational,
    b: &BigRational,
) -> Result<UniformBoundReport> {
    if f.len() != g.len() {
        return Err(Error::Precondition(format!("f has {} cells but g has {}", f.len(), g.len())));
    }
    if f.is_empty() {
        return Err(Error::Precondition("empty grid".into()));
    }
    if b <= a {
        return Err(Error::Precondition("interval must satisfy a < b".into()));
    }
    if let Some(i) = g.iter().position(|x| x.is_negative()) {
        return Err(Error::Precondition(format!("g is negative at cell {i}")));
    }
    if let Some(i) = g.windows(2).position(|w| w[1] < w[0]) {
        return Err(Error::Precondition(format!("g decreases between cells {i} and {}", i + 1)));
    }
    let m = f.len();
    let delta = (b - a) / BigRational::from_integer(m.into());
    let lhs = f.iter().zip(g).fold(BigRational::zero(), |s, (fi, gi)| s + fi * gi) * &delta;
    let mass = g.iter().fold(BigRational::zero(), |s, gi| s + gi) * &delta;
    let mut suffix = BigRational::zero();
    let mut best: Option<(BigRational, usize)> = None;
    for c in (0..m).rev() {
        suffix += &f[c];
        let avg = &suffix / BigRational::from_integer((m - c).into());
        if best.as_ref().is_none_or(|(v, _)| avg <= *v) {
            best = Some((avg, c));
        }
    }
    let (min_avg, worst_suffix) = best.unwrap();
    let rhs = mass * min_avg;
    let holds = lhs >= rhs;
    Ok(UniformBoundReport { lhs, rhs, worst_suffix, holds })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn unit() -> (BigRational, BigRational) {
        (q(0, 1), q(1, 1))
    }

    #[test]
    fn constant_f_is_tight() {
        let (a, b) = unit();
        let f = vec![q(1, 3); 4];
        let g = vec![q(0, 1), q(1, 2), q(1, 1), q(5, 2)];
        let r = uniform_bound_check(&f, &g, &a, &b).unwrap();
        assert!(r.holds);
        assert_eq!(r.lhs, r.rhs);
    }

    #[test]
    fn constant_g_with_increasing_f_is_tight() {
        // For increasing f the full-range average is the minimum suffix average.
        let (a, b) = unit();
        let f = vec![q(0, 1), q(1, 4), q(1, 2), q(1, 1)];
        let g = vec![q(2, 1); 4];
        let r = uniform_bound_check(&f, &g, &a, &b).unwrap();
        assert_eq!(r.worst_suffix, 0);
        assert_eq!(r.lhs, r.rhs);
    }

    #[test]
    fn decreasing_f_uses_last_cell() {
        let (a, b) = unit();
        let f = vec![q(1, 1), q(1, 2), q(0, 1)];
        let g = vec![q(1, 1), q(1, 1), q(4, 1)];
        let r = uniform_bound_check(&f, &g, &a, &b).unwrap();
        assert_eq!(r.worst_suffix, 2);
        assert!(r.holds);
    }

    #[test]
    fn rejects_decreasing_g() {
        let (a, b) = unit();
        let e = uniform_bound_check(&[q(1, 2), q(1, 2)], &[q(2, 1), q(1, 1)], &a, &b);
        assert!(matches!(e, Err(Error::Precondition(_))));
        let e = uniform_bound_check(&[q(1, 2)], &[q(-1, 1)], &a, &b);
        assert!(matches!(e, Err(Error::Precondition(_))));
    }
}
