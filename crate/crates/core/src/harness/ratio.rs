use rand::Rng as _;

use super::kernel::{positions, uniform_choice_expectation, CommonKernel};
use super::RatioEstimate;
use crate::error::{Error, Result};
use crate::graph::{maximum_matching_size, Graph, Vertex};
use crate::greedy::{build_algorithm_list, check_permutation, greedy_match, AlgorithmKind};
use crate::perm::{factorial, Permutations};
use crate::rng;

/// Vertex limit for kinds enumerating one permutation family.
pub const EXACT_SINGLE_LIMIT: usize = 8;
/// Vertex limit for kinds enumerating two permutation families or branching.
pub const EXACT_DOUBLE_LIMIT: usize = 6;

/// Largest vertex count [`exact_expected_ratio`] accepts for `kind`.
pub fn exact_limit(kind: AlgorithmKind) -> usize {
    match kind {
        AlgorithmKind::Greedy | AlgorithmKind::Rdo | AlgorithmKind::Ranking | AlgorithmKind::Franking => {
            EXACT_SINGLE_LIMIT
        }
        AlgorithmKind::Irp | AlgorithmKind::Mrg | AlgorithmKind::Uur => EXACT_DOUBLE_LIMIT,
    }
}

/// Largest vertex count [`adversarial_order_search`] accepts for `kind`.
fn search_limit(kind: AlgorithmKind) -> usize {
    match kind {
        AlgorithmKind::Greedy | AlgorithmKind::Franking => EXACT_SINGLE_LIMIT,
        _ => EXACT_DOUBLE_LIMIT,
    }
}

fn denominator(g: &Graph) -> Result<usize> {
    maximum_matching_size(g)
}

fn ratio(total: f64, outcomes: u64, opt: usize) -> f64 {
    if opt == 0 {
        1.0
    } else {
        total / outcomes as f64 / opt as f64
    }
}

fn adversarial<'a>(kind: AlgorithmKind, order: Option<&'a [Vertex]>, n: usize) -> Result<&'a [Vertex]> {
    let order = order.ok_or_else(|| Error::InvalidParameter(format!("{kind} requires an adversarial order")))?;
    check_permutation(order, n)?;
    Ok(order)
}

/// Exact expected ratio of `kind` on `g` by enumerating every permutation
/// the algorithm draws uniformly. Adversarial kinds use `adversarial_order`.
pub fn exact_expected_ratio(g: &Graph, kind: AlgorithmKind, adversarial_order: Option<&[Vertex]>) -> Result<RatioEstimate> {
    let n = g.vertex_count();
    let limit = exact_limit(kind);
    if n > limit {
        return Err(Error::OracleScale { got: n, limit });
    }
    let opt = denominator(g)?;
    let identity: Vec<usize> = (0..n).collect();
    let mut kernel = CommonKernel::new(g);
    let (total, outcomes) = match kind {
        AlgorithmKind::Greedy => {
            let pi = adversarial(kind, adversarial_order, n)?;
            kernel.set_preference(&positions(pi));
            (kernel.run(pi) as f64, 1)
        }
        AlgorithmKind::Ranking => {
            let mut sum = 0u64;
            for order in Permutations::new(n) {
                kernel.set_preference(&positions(&order));
                sum += kernel.run(&order) as u64;
            }
            (sum as f64, factorial(n))
        }
        AlgorithmKind::Rdo => {
            kernel.set_preference(&identity);
            let sum: u64 = Permutations::new(n).map(|pi| kernel.run(&pi) as u64).sum();
            (sum as f64, factorial(n))
        }
        AlgorithmKind::Franking => {
            let pi = adversarial(kind, adversarial_order, n)?;
            let mut sum = 0u64;
            for sigma in Permutations::new(n) {
                kernel.set_preference(&positions(&sigma));
                sum += kernel.run(pi) as u64;
            }
            (sum as f64, factorial(n))
        }
        AlgorithmKind::Uur => {
            let pis: Vec<Vec<usize>> = Permutations::new(n).collect();
            let mut sum = 0u64;
            for sigma in Permutations::new(n) {
                kernel.set_preference(&positions(&sigma));
                sum += pis.iter().map(|pi| kernel.run(pi) as u64).sum::<u64>();
            }
            (sum as f64, factorial(n) * factorial(n))
        }
        AlgorithmKind::Mrg => {
            let adj = g.adjacency_masks();
            let sum: f64 = Permutations::new(n).map(|pi| uniform_choice_expectation(&adj, &pi)).sum();
            (sum, factorial(n))
        }
        AlgorithmKind::Irp => {
            let pi = adversarial(kind, adversarial_order, n)?;
            (uniform_choice_expectation(&g.adjacency_masks(), pi), 1)
        }
    };
    Ok(RatioEstimate::exact(ratio(total, outcomes, opt), outcomes))
}

/// Seed of trial `t` derived from a master seed.
pub fn trial_seed(seed: u64, t: u64) -> u64 {
    rng::split(seed, t).random()
}

/// Sampled expected ratio over `trials` independent runs of the engine.
pub fn monte_carlo_ratio(
    g: &Graph,
    kind: AlgorithmKind,
    adversarial_order: Option<&[Vertex]>,
    trials: u64,
    seed: u64,
) -> Result<RatioEstimate> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be positive".into()));
    }
    let opt = denominator(g)?;
    if opt == 0 {
        return Ok(RatioEstimate { mean: 1.0, trials, std_error: 0.0, exact: false });
    }
    let (mut mean, mut m2) = (0.0f64, 0.0f64);
    for t in 0..trials {
        let list = build_algorithm_list(kind, g, adversarial_order, trial_seed(seed, t))?;
        let r = greedy_match(g, &list).size() as f64 / opt as f64;
        let delta = r - mean;
        mean += delta / (t + 1) as f64;
        m2 += delta * (r - mean);
    }
    let std_error = if trials > 1 { (m2 / (trials - 1) as f64).sqrt() / (trials as f64).sqrt() } else { 0.0 };
    Ok(RatioEstimate { mean, trials, std_error, exact: false })
}

/// Decision order minimizing the exact expected ratio of an adversarial
/// kind, with that ratio. Ties resolve to the lexicographically first order.
pub fn adversarial_order_search(g: &Graph, kind: AlgorithmKind) -> Result<(Vec<Vertex>, RatioEstimate)> {
    if !kind.needs_adversarial_order() {
        return Err(Error::InvalidParameter(format!("{kind} has no adversarial decision order")));
    }
    let n = g.vertex_count();
    let limit = search_limit(kind);
    if n > limit {
        return Err(Error::OracleScale { got: n, limit });
    }
    let opt = denominator(g)?;
    let pis: Vec<Vec<usize>> = Permutations::new(n).collect();
    let mut kernel = CommonKernel::new(g);
    let (best, total, outcomes) = match kind {
        AlgorithmKind::Franking => {
            let mut sums = vec![0u64; pis.len()];
            for sigma in Permutations::new(n) {
                kernel.set_preference(&positions(&sigma));
                for (s, pi) in sums.iter_mut().zip(&pis) {
                    *s += kernel.run(pi) as u64;
                }
            }
            let i = argmin(&sums);
            (i, sums[i] as f64, factorial(n))
        }
        AlgorithmKind::Greedy => {
            let sizes: Vec<u64> = pis
                .iter()
                .map(|pi| {
                    kernel.set_preference(&positions(pi));
                    kernel.run(pi) as u64
                })
                .collect();
            let i = argmin(&sizes);
            (i, sizes[i] as f64, 1)
        }
        _ => {
            let adj = g.adjacency_masks();
            let values: Vec<f64> = pis.iter().map(|pi| uniform_choice_expectation(&adj, pi)).collect();
            let i = (0..values.len()).fold(0, |b, i| if values[i] < values[b] { i } else { b });
            (i, values[i], 1)
        }
    };
    let trials = if kind == AlgorithmKind::Franking { factorial(n) } else { 1 };
    Ok((pis[best].clone(), RatioEstimate::exact(ratio(total, outcomes, opt), trials)))
}

fn argmin(values: &[u64]) -> usize {
    (0..values.len()).fold(0, |b, i| if values[i] < values[b] { i } else { b })
}
