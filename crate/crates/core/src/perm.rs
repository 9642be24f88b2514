//! Lexicographic permutation enumeration.

/// All permutations of `0..n` in lexicographic order.
#[derive(Clone, Debug)]
pub struct Permutations {
    current: Option<Vec<usize>>,
}

impl Permutations {
    pub fn new(n: usize) -> Self {
        Permutations { current: Some((0..n).collect()) }
    }
}

/// Advances `perm` to its lexicographic successor; false at the last permutation.
pub fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
    perm.swap(i, j);
    perm[i + 1..].reverse();
    true
}

impl Iterator for Permutations {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let mut succ = out.clone();
        if next_permutation(&mut succ) {
            self.current = Some(succ);
        }
        Some(out)
    }
}

/// `n!`.
pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}
