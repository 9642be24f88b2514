use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::rng::Rng;

/// Distinct ranks in `(0, 1]`, one per vertex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct RankVector(Vec<f64>);

impl TryFrom<Vec<f64>> for RankVector {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        RankVector::new(v)
    }
}

impl From<RankVector> for Vec<f64> {
    fn from(r: RankVector) -> Self {
        r.0
    }
}

fn check_distinct(keys: &[f64], what: &str) -> Result<()> {
    let mut sorted = keys.to_vec();
    sorted.sort_by(f64::total_cmp);
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidParameter(format!("{what} contains a repeated value")));
    }
    Ok(())
}

pub(crate) fn check_keys(keys: &[f64], what: &str) -> Result<()> {
    if keys.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter(format!("{what} contains a non-finite value")));
    }
    check_distinct(keys, what)
}

// Uniform draw in (0, 1].
fn draw(rng: &mut Rng) -> f64 {
    1.0 - rng.random::<f64>()
}

impl RankVector {
    /// Validates finiteness, range `(0, 1]` and distinctness.
    pub fn new(ranks: Vec<f64>) -> Result<Self> {
        check_keys(&ranks, "rank vector")?;
        if let Some(x) = ranks.iter().find(|&&x| !(x > 0.0 && x <= 1.0)) {
            return Err(Error::InvalidParameter(format!("rank {x} outside (0,1]")));
        }
        Ok(RankVector(ranks))
    }

    /// Independent uniform ranks; a draw equal to an earlier one is re-sampled.
    pub fn sample(n: usize, rng: &mut Rng) -> Self {
        let mut ranks: Vec<f64> = Vec::with_capacity(n);
        for _ in 0..n {
            let mut x = draw(rng);
            while ranks.contains(&x) {
                x = draw(rng);
            }
            ranks.push(x);
        }
        RankVector(ranks)
    }

    /// Ranks realizing a given order: `order[i]` receives `(i + 1) / (n + 1)`.
    pub fn from_order(order: &[Vertex]) -> Result<Self> {
        let n = order.len();
        let mut ranks = vec![f64::NAN; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || !ranks[v].is_nan() {
                return Err(Error::InvalidParameter(format!("{order:?} is not a permutation")));
            }
            ranks[v] = (i + 1) as f64 / (n + 1) as f64;
        }
        Ok(RankVector(ranks))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: Vertex) -> f64 {
        self.0[v]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// Vertices sorted by increasing rank.
    pub fn order(&self) -> Vec<Vertex> {
        let mut vs: Vec<Vertex> = (0..self.0.len()).collect();
        vs.sort_by(|&a, &b| self.0[a].total_cmp(&self.0[b]));
        vs
    }

    /// Copy with vertex `v` moved to rank `x`.
    pub fn with_rank(&self, v: Vertex, x: f64) -> Result<Self> {
        let mut r = self.0.clone();
        r[v] = x;
        RankVector::new(r)
    }
}

/// Checks that `order` lists every vertex of `0..n` exactly once.
pub fn check_permutation(order: &[Vertex], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if order.len() != n {
        return Err(Error::InvalidParameter(format!("permutation has length {}, expected {n}", order.len())));
    }
    for &v in order {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidParameter(format!("{order:?} is not a permutation of 0..{n}")));
        }
    }
    Ok(())
}
