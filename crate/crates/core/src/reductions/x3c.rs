use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum X3CError {
    #[error("k must be positive")]
    ZeroK,
    #[error("set {set} contains {value}, outside 1..={max}")]
    ElementOutOfRange { set: usize, value: usize, max: usize },
    #[error("set {0} repeats an element")]
    RepeatedElement(usize),
    #[error("the construction needs at least 3 sets, found {0}")]
    TooFewSets(usize),
    #[error("the construction needs k even, found {0}")]
    OddK(usize),
    #[error("the given sets are not an exact cover")]
    NotACover,
}

/// Exact cover by 3-sets: a ground set `{1, ..., 3k}` and `n` triples over it.
/// Duplicate triples are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct X3CInstance {
    k: usize,
    sets: Vec<[usize; 3]>,
}

impl X3CInstance {
    pub fn new(k: usize, sets: Vec<[usize; 3]>) -> Result<Self, X3CError> {
        if k == 0 {
            return Err(X3CError::ZeroK);
        }
        for (i, s) in sets.iter().enumerate() {
            if let Some(&value) = s.iter().find(|&&v| v == 0 || v > 3 * k) {
                return Err(X3CError::ElementOutOfRange { set: i, value, max: 3 * k });
            }
            if s[0] == s[1] || s[1] == s[2] || s[0] == s[2] {
                return Err(X3CError::RepeatedElement(i));
            }
        }
        Ok(X3CInstance { k, sets })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[[usize; 3]] {
        &self.sets
    }

    fn mask(&self, set: usize) -> u128 {
        self.sets[set].iter().fold(0, |acc, &e| acc | 1 << (e - 1))
    }

    /// True if the (0-based) set indices are distinct and partition the ground set.
    pub fn is_exact_cover(&self, cover: &[usize]) -> bool {
        if cover.len() != self.k || cover.iter().any(|&j| j >= self.n()) {
            return false;
        }
        let mut covered = vec![false; 3 * self.k];
        for &j in cover {
            for &e in &self.sets[j] {
                if std::mem::replace(&mut covered[e - 1], true) {
                    return false;
                }
            }
        }
        covered.iter().all(|&c| c)
    }
}

/// Searches `k`-subsets of the triples in lexicographic order and returns the
/// first exact cover (0-based, ascending), if any.
pub fn x3c_oracle(inst: &X3CInstance) -> Option<Vec<usize>> {
    if 3 * inst.k > 128 {
        return oracle_slow(inst);
    }
    let masks: Vec<u128> = (0..inst.n()).map(|j| inst.mask(j)).collect();
    let full = if 3 * inst.k == 128 { u128::MAX } else { (1u128 << (3 * inst.k)) - 1 };
    let mut chosen = Vec::with_capacity(inst.k);
    fn go(masks: &[u128], from: usize, used: u128, full: u128, need: usize, chosen: &mut Vec<usize>) -> bool {
        if need == 0 {
            return used == full;
        }
        for j in from..masks.len() {
            if masks.len() - j < need {
                break;
            }
            if used & masks[j] == 0 {
                chosen.push(j);
                if go(masks, j + 1, used | masks[j], full, need - 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    go(&masks, 0, 0, full, inst.k, &mut chosen).then_some(chosen)
}

fn oracle_slow(inst: &X3CInstance) -> Option<Vec<usize>> {
    let mut chosen = Vec::new();
    fn go(inst: &X3CInstance, from: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == inst.k {
            return inst.is_exact_cover(chosen);
        }
        for j in from..inst.n() {
            chosen.push(j);
            if go(inst, j + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    go(inst, 0, &mut chosen).then_some(chosen)
}
