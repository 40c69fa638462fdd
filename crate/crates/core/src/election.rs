//! Candidates, ballots, weighted vote collections and single-round winner
//! determination under scoring protocols.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::protocol::{ProtocolError, ScoringProtocol};

/// Index of a candidate within one election. Ids are contiguous from 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CandidateId(pub usize);

impl CandidateId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for CandidateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A set of candidate ids backed by a growable bitset.
///
/// Trailing zero words are never stored, so structural equality and hashing
/// coincide with set equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct CandidateSet {
    words: Vec<u64>,
}

impl CandidateSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// The set `{0, 1, ..., m-1}`.
    pub fn full(m: usize) -> Self {
        let mut words = vec![u64::MAX; m / 64];
        if !m.is_multiple_of(64) {
            words.push((1u64 << (m % 64)) - 1);
        }
        CandidateSet { words }
    }

    pub fn insert(&mut self, c: CandidateId) {
        let (w, b) = (c.0 / 64, c.0 % 64);
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << b;
    }

    pub fn remove(&mut self, c: CandidateId) {
        let (w, b) = (c.0 / 64, c.0 % 64);
        if w < self.words.len() {
            self.words[w] &= !(1 << b);
            while self.words.last() == Some(&0) {
                self.words.pop();
            }
        }
    }

    #[inline]
    pub fn contains(&self, c: CandidateId) -> bool {
        let (w, b) = (c.0 / 64, c.0 % 64);
        w < self.words.len() && self.words[w] & (1 << b) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_subset(&self, other: &CandidateSet) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, w)| w & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    /// Members in ascending id order.
    pub fn iter(&self) -> impl Iterator<Item = CandidateId> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(CandidateId(i * 64 + bit))
            })
        })
    }

    /// The only member, if the set is a singleton.
    pub fn single(&self) -> Option<CandidateId> {
        let mut it = self.iter();
        match (it.next(), it.next()) {
            (Some(c), None) => Some(c),
            _ => None,
        }
    }
}

impl FromIterator<CandidateId> for CandidateSet {
    fn from_iter<I: IntoIterator<Item = CandidateId>>(iter: I) -> Self {
        let mut set = CandidateSet::new();
        for c in iter {
            set.insert(c);
        }
        set
    }
}

impl fmt::Debug for CandidateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|c| c.0)).finish()
    }
}

/// A tie-free linear order, most preferred first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ballot(Vec<CandidateId>);

impl Ballot {
    pub fn new(order: Vec<CandidateId>) -> Self {
        Ballot(order)
    }

    pub fn from_indices(order: &[usize]) -> Self {
        Ballot(order.iter().map(|&i| CandidateId(i)).collect())
    }

    /// Builds `⋯ > suffix[0] > suffix[1] > ...` over candidates `0..m`, with
    /// the unlisted candidates on top in ascending id order.
    pub fn with_suffix(m: usize, suffix: &[CandidateId]) -> Self {
        let listed: CandidateSet = suffix.iter().copied().collect();
        let mut order: Vec<CandidateId> = (0..m)
            .map(CandidateId)
            .filter(|c| !listed.contains(*c))
            .collect();
        order.extend_from_slice(suffix);
        Ballot(order)
    }

    pub fn order(&self) -> &[CandidateId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<CandidateId> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<CandidateId> {
        self.0.last().copied()
    }

    pub fn candidates(&self) -> CandidateSet {
        self.0.iter().copied().collect()
    }

    /// True if the ballot lists every member of `field` exactly once and
    /// nothing else.
    pub fn is_permutation_of(&self, field: &CandidateSet) -> bool {
        if self.0.len() != field.len() {
            return false;
        }
        let mut seen = CandidateSet::new();
        for &c in &self.0 {
            if !field.contains(c) || seen.contains(c) {
                return false;
            }
            seen.insert(c);
        }
        true
    }

    /// Rank (0-based) of `c`, if present.
    pub fn position(&self, c: CandidateId) -> Option<usize> {
        self.0.iter().position(|&x| x == c)
    }

    /// Adds `weight * vector[rank]` to each member of `field`, ranking only
    /// the members of `field` in ballot order.
    pub(crate) fn add_scores(&self, field: &CandidateSet, vector: &[u64], weight: u64, scores: &mut [u64]) {
        let mut rank = 0;
        for &c in &self.0 {
            if rank == vector.len() {
                break;
            }
            if field.contains(c) {
                scores[c.0] += weight * vector[rank];
                rank += 1;
            }
        }
    }
}

/// Restricts `ballot` to `survivors`, keeping their relative order.
pub fn restrict_ballot(ballot: &Ballot, survivors: &CandidateSet) -> Result<Ballot, ElectionError> {
    if survivors.is_empty() {
        return Err(ElectionError::EmptySurvivors);
    }
    if !survivors.is_subset(&ballot.candidates()) {
        return Err(ElectionError::SurvivorsNotOnBallot);
    }
    Ok(Ballot(ballot.0.iter().copied().filter(|&c| survivors.contains(c)).collect()))
}

/// `multiplicity` anonymous voters each casting `ballot` with `weight`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedVote {
    pub ballot: Ballot,
    pub weight: u64,
    pub multiplicity: u64,
}

impl WeightedVote {
    pub fn new(ballot: Ballot, weight: u64, multiplicity: u64) -> Self {
        WeightedVote { ballot, weight, multiplicity }
    }

    pub fn single(ballot: Ballot) -> Self {
        Self::new(ballot, 1, 1)
    }

    pub fn total_weight(&self) -> u64 {
        self.weight * self.multiplicity
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ElectionError {
    #[error("an election needs at least one candidate")]
    NoCandidates,
    #[error("invalid candidate name {0:?}")]
    InvalidName(String),
    #[error("duplicate candidate name {0:?}")]
    DuplicateName(String),
    #[error("vote {vote} is not a permutation of the candidates")]
    NotPermutation { vote: usize },
    #[error("vote {vote} has zero weight or multiplicity")]
    ZeroWeight { vote: usize },
    #[error("survivor set is empty")]
    EmptySurvivors,
    #[error("survivor set is not contained in the ballot")]
    SurvivorsNotOnBallot,
}

/// Candidate names must be nonempty and contain neither whitespace nor '>'.
pub fn is_valid_name(name: &str) -> bool {
    !name.is_empty() && !name.chars().any(|ch| ch.is_whitespace() || ch == '>')
}

/// A candidate set with a multiset of weighted ballots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Election {
    names: Vec<String>,
    votes: Vec<WeightedVote>,
}

impl Election {
    pub fn new(names: Vec<String>, votes: Vec<WeightedVote>) -> Result<Self, ElectionError> {
        if names.is_empty() {
            return Err(ElectionError::NoCandidates);
        }
        for (i, name) in names.iter().enumerate() {
            if !is_valid_name(name) {
                return Err(ElectionError::InvalidName(name.clone()));
            }
            if names[..i].contains(name) {
                return Err(ElectionError::DuplicateName(name.clone()));
            }
        }
        let full = CandidateSet::full(names.len());
        for (i, vote) in votes.iter().enumerate() {
            if !vote.ballot.is_permutation_of(&full) {
                return Err(ElectionError::NotPermutation { vote: i });
            }
            if vote.weight == 0 || vote.multiplicity == 0 {
                return Err(ElectionError::ZeroWeight { vote: i });
            }
        }
        Ok(Election { names, votes })
    }

    /// An election with the given candidate names and no votes.
    pub fn empty<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, ElectionError> {
        Self::new(names.into_iter().map(Into::into).collect(), Vec::new())
    }

    pub fn num_candidates(&self) -> usize {
        self.names.len()
    }

    pub fn candidates(&self) -> CandidateSet {
        CandidateSet::full(self.names.len())
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, c: CandidateId) -> &str {
        &self.names[c.0]
    }

    pub fn id_of(&self, name: &str) -> Option<CandidateId> {
        self.names.iter().position(|n| n == name).map(CandidateId)
    }

    pub fn votes(&self) -> &[WeightedVote] {
        &self.votes
    }

    pub fn total_weight(&self) -> u64 {
        self.votes.iter().map(WeightedVote::total_weight).sum()
    }

    /// Formats a candidate set as space-separated names in id order.
    pub fn format_set(&self, set: &CandidateSet) -> String {
        set.iter().map(|c| self.name(c)).collect::<Vec<_>>().join(" ")
    }

    pub fn format_ballot(&self, ballot: &Ballot) -> String {
        ballot.order().iter().map(|&c| self.name(c)).collect::<Vec<_>>().join(" > ")
    }

    /// Parses `"a > b > c"` using this election's names.
    pub fn parse_ballot(&self, text: &str) -> Option<Ballot> {
        text.split('>')
            .map(|tok| self.id_of(tok.trim()))
            .collect::<Option<Vec<_>>>()
            .map(Ballot::new)
    }

    pub fn tally(&self, protocol: &ScoringProtocol) -> Result<Tally, ProtocolError> {
        self.tally_over(protocol, &self.candidates())
    }

    /// Tallies the votes restricted to `field`, scoring with the protocol's
    /// vector for `|field|` candidates.
    pub fn tally_over(&self, protocol: &ScoringProtocol, field: &CandidateSet) -> Result<Tally, ProtocolError> {
        let vector = protocol.score_vector(field.len())?;
        let mut scores = vec![0; self.names.len()];
        for vote in &self.votes {
            vote.ballot.add_scores(field, &vector, vote.total_weight(), &mut scores);
        }
        Ok(Tally { field: field.clone(), scores })
    }

    pub fn winners(&self, protocol: &ScoringProtocol) -> Result<CandidateSet, ProtocolError> {
        Ok(self.tally(protocol)?.winners())
    }
}

/// Per-candidate scores over a field of competing candidates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tally {
    field: CandidateSet,
    scores: Vec<u64>,
}

impl Tally {
    pub fn new(field: CandidateSet, scores: Vec<u64>) -> Self {
        Tally { field, scores }
    }

    pub fn field(&self) -> &CandidateSet {
        &self.field
    }

    pub fn score(&self, c: CandidateId) -> u64 {
        self.scores[c.0]
    }

    /// Scores indexed by candidate id; non-members of the field read 0.
    pub fn scores(&self) -> &[u64] {
        &self.scores
    }

    pub fn total(&self) -> u64 {
        self.field.iter().map(|c| self.scores[c.0]).sum()
    }

    /// All field members attaining the maximum score.
    pub fn winners(&self) -> CandidateSet {
        max_scorers(&self.scores, &self.field)
    }
}

pub(crate) fn max_scorers(scores: &[u64], field: &CandidateSet) -> CandidateSet {
    let Some(best) = field.iter().map(|c| scores[c.0]).max() else {
        return CandidateSet::new();
    };
    field.iter().filter(|c| scores[c.0] == best).collect()
}
