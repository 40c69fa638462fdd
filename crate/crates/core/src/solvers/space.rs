use std::sync::atomic::{AtomicU64, Ordering};

use super::enumerate::{multiset_count, unrank_multiset};

/// Shared count of evaluated plans with a hard limit.
pub(crate) struct Budget {
    limit: u64,
    spent: AtomicU64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, spent: AtomicU64::new(0) }
    }

    /// Records one evaluation; false once the limit is exceeded.
    #[inline]
    pub fn charge(&self) -> bool {
        self.spent.fetch_add(1, Ordering::Relaxed) < self.limit
    }

    pub fn spent(&self) -> u64 {
        self.spent.load(Ordering::Relaxed).min(self.limit.saturating_add(1))
    }
}

/// Groups manipulator indices by weight, in order of first appearance.
/// Equal-weight manipulators are interchangeable.
pub(crate) fn weight_groups(weights: &[u64], members: impl IntoIterator<Item = usize>) -> Vec<Vec<usize>> {
    let mut groups: Vec<(u64, Vec<usize>)> = Vec::new();
    for i in members {
        match groups.iter_mut().find(|(w, _)| *w == weights[i]) {
            Some((_, g)) => g.push(i),
            None => groups.push((weights[i], vec![i])),
        }
    }
    groups.into_iter().map(|(_, g)| g).collect()
}

/// Index space of per-group option multisets: each index names one
/// assignment of options to manipulators up to permutation within a group.
/// The first group is the most significant digit.
pub(crate) struct PlanSpace {
    groups: Vec<Vec<usize>>,
    options: u64,
    counts: Vec<u64>,
    total: u64,
}

impl PlanSpace {
    /// `None` if the space does not fit in `u64`.
    pub fn new(groups: Vec<Vec<usize>>, options: u64) -> Option<Self> {
        let counts = groups
            .iter()
            .map(|g| multiset_count(options, g.len() as u64))
            .collect::<Option<Vec<_>>>()?;
        let total = counts.iter().try_fold(1u64, |acc, &c| acc.checked_mul(c))?;
        Some(PlanSpace { groups, options, counts, total })
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Writes the option chosen by each grouped manipulator into `out`,
    /// which is indexed by manipulator.
    pub fn decode(&self, mut idx: u64, out: &mut [u64]) {
        let mut buf = Vec::new();
        for (g, members) in self.groups.iter().enumerate().rev() {
            let rank = idx % self.counts[g];
            idx /= self.counts[g];
            buf.resize(members.len(), 0);
            unrank_multiset(self.options, rank, &mut buf);
            for (&m, &o) in members.iter().zip(&buf) {
                out[m] = o;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn groups_by_weight() {
        assert_eq!(weight_groups(&[2, 1, 2, 3, 1], 0..5), vec![vec![0, 2], vec![1, 4], vec![3]]);
        assert_eq!(weight_groups(&[2, 1, 2, 3, 1], [1, 2, 3]), vec![vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn decodes_every_assignment_once_up_to_symmetry() {
        let weights = [1, 2, 1];
        let space = PlanSpace::new(weight_groups(&weights, 0..3), 4).unwrap();
        assert_eq!(space.total(), 10 * 4);
        let mut seen = HashSet::new();
        for idx in 0..space.total() {
            let mut out = vec![0; 3];
            space.decode(idx, &mut out);
            assert!(out[0] <= out[2]);
            assert!(seen.insert(out));
        }
    }

    #[test]
    fn budget_counts_past_limit() {
        let b = Budget::new(2);
        assert!(b.charge());
        assert!(b.charge());
        assert!(!b.charge());
        assert_eq!(b.spent(), 3);
    }
}
