//! Ranking and unranking of the combinatorial objects the searches walk:
//! multisets (as nondecreasing sequences), permutations, and weak
//! compositions.

use crate::election::{Ballot, CandidateId};

/// `C(n, k)`, or `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    Some(acc as u64)
}

/// Number of size-`size` multisets drawn from `types` types.
pub fn multiset_count(types: u64, size: u64) -> Option<u64> {
    if size == 0 {
        return Some(1);
    }
    if types == 0 {
        return Some(0);
    }
    binomial(types + size - 1, size)
}

/// Writes the `rank`-th nondecreasing sequence of length `out.len()` over
/// `0..types`, in lexicographic order.
pub fn unrank_multiset(types: u64, mut rank: u64, out: &mut [u64]) {
    let mut lo = 0;
    let len = out.len();
    for (i, slot) in out.iter_mut().enumerate() {
        let remaining = (len - i - 1) as u64;
        let mut t = lo;
        loop {
            let below = multiset_count(types - t, remaining).expect("rank in range");
            if rank < below {
                break;
            }
            rank -= below;
            t += 1;
        }
        *slot = t;
        lo = t;
    }
}

/// `n!`, or `None` on overflow.
pub fn factorial(n: u64) -> Option<u64> {
    (1..=n).try_fold(1u64, |acc, i| acc.checked_mul(i))
}

/// The `rank`-th permutation of `items` in lexicographic order (relative to
/// the order of `items`).
pub fn unrank_permutation(items: &[CandidateId], mut rank: u64) -> Ballot {
    let mut pool = items.to_vec();
    let mut order = Vec::with_capacity(items.len());
    for i in (0..items.len()).rev() {
        let block = factorial(i as u64).expect("permutation space fits in u64");
        let pick = (rank / block) as usize;
        rank %= block;
        order.push(pool.remove(pick));
    }
    Ballot::new(order)
}

/// Weak compositions of `total` into `parts` parts, starting from
/// `(total, 0, ..., 0)` and ending at `(0, ..., 0, total)`.
///
/// Read as multisets of part indices, this is the same order in which
/// [`unrank_multiset`] enumerates ranks `0, 1, 2, ...`.
pub struct Compositions {
    counts: Vec<u64>,
    started: bool,
    done: bool,
}

impl Compositions {
    pub fn new(total: u64, parts: usize) -> Self {
        let mut counts = vec![0; parts];
        if let Some(first) = counts.first_mut() {
            *first = total;
        }
        Compositions { counts, started: false, done: parts == 0 && total > 0 }
    }

    /// Advances to the next composition; `None` once exhausted.
    pub fn next_counts(&mut self) -> Option<&[u64]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.counts);
        }
        let parts = self.counts.len();
        if parts < 2 {
            self.done = true;
            return None;
        }
        let Some(i) = (0..parts - 1).rev().find(|&i| self.counts[i] > 0) else {
            self.done = true;
            return None;
        };
        let tail: u64 = self.counts[i + 1..].iter().sum();
        self.counts[i] -= 1;
        self.counts[i + 1] = tail + 1;
        for c in &mut self.counts[i + 2..] {
            *c = 0;
        }
        Some(&self.counts)
    }
}
