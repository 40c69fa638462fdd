//! Fixed-candidate-count decision procedure: count how many manipulators
//! cast each ballot type, per round.
//!
//! With `m` candidates and `K` interchangeable manipulators there are
//! `C(K + m! - 1, m! - 1)` initial-round count vectors, polynomial in `K`
//! for fixed `m`. Revoting runoffs repeat the enumeration over the `|W|!`
//! ballot types of the runoff field.

use std::collections::HashMap;

use crate::election::{max_scorers, Ballot, CandidateId, CandidateSet};
use crate::instance::ManipulationInstance;
use crate::runoff::{Certificate, Mode, ThenSemantics, VotePlan};

use super::enumerate::{factorial, unrank_permutation, Compositions};
use super::space::Budget;
use super::{SolveError, SolveResult, SolverConfig, SolverKind};

/// All orderings of `field` with their unit-weight score contributions.
struct BallotTypes {
    ballots: Vec<Ballot>,
    contributions: Vec<Vec<u64>>,
}

impl BallotTypes {
    fn over(field: &CandidateSet, vector: &[u64], m: usize) -> Self {
        let items: Vec<CandidateId> = field.iter().collect();
        let n = factorial(items.len() as u64).expect("bounded candidate count");
        let ballots: Vec<Ballot> = (0..n).map(|i| unrank_permutation(&items, i)).collect();
        let contributions = ballots.iter().map(|b| contribution(b, field, vector, m)).collect();
        BallotTypes { ballots, contributions }
    }

    fn expand(&self, counts: &[u64]) -> Vec<Ballot> {
        counts
            .iter()
            .zip(&self.ballots)
            .flat_map(|(&c, b)| std::iter::repeat_n(b.clone(), c as usize))
            .collect()
    }
}

fn contribution(ballot: &Ballot, field: &CandidateSet, vector: &[u64], m: usize) -> Vec<u64> {
    let mut scores = vec![0; m];
    ballot.add_scores(field, vector, 1, &mut scores);
    scores
}

/// `base + weight * sum_t counts[t] * contributions[t]`
fn combine(base: &[u64], contributions: &[Vec<u64>], counts: &[u64], weight: u64) -> Vec<u64> {
    let mut scores = base.to_vec();
    for (&c, contrib) in counts.iter().zip(contributions) {
        if c == 0 {
            continue;
        }
        for (s, &x) in scores.iter_mut().zip(contrib) {
            *s += weight * c * x;
        }
    }
    scores
}

struct RunoffField {
    base: Vec<u64>,
    /// Contribution of each initial-round ballot type once restricted.
    restricted: Vec<Vec<u64>>,
}

pub fn solve_bucket(
    inst: &ManipulationInstance,
    semantics: ThenSemantics,
    config: &SolverConfig,
) -> Result<SolveResult, SolveError> {
    if !inst.is_uniform() {
        return Err(SolveError::NotApplicable("bucket enumeration needs equal-weight manipulators"));
    }
    let m = inst.num_candidates();
    if m > config.bucket_max_candidates {
        return Err(SolveError::TooManyCandidates { m, bound: config.bucket_max_candidates });
    }
    let k = inst.weights.len() as u64;
    let weight = inst.weights.first().copied().unwrap_or(1);
    let election = &inst.election;
    let protocol = &inst.protocol;
    let full = election.candidates();
    let vector = protocol.score_vector(m).expect("validated");
    let types = BallotTypes::over(&full, &vector, m);
    let base = election.tally(protocol).expect("validated").scores().to_vec();
    let budget = Budget::new(config.budget);

    let mut runoff_fields: HashMap<CandidateSet, RunoffField> = HashMap::new();
    let mut revotes: HashMap<CandidateSet, Option<Vec<Ballot>>> = HashMap::new();

    let mut round1 = Compositions::new(k, types.ballots.len());
    while let Some(counts) = round1.next_counts() {
        if !budget.charge() {
            return Ok(SolveResult::unknown(SolverKind::Bucket, budget.spent()));
        }
        let scores = combine(&base, &types.contributions, counts, weight);
        let winners = max_scorers(&scores, &full);
        if !winners.contains(inst.target) {
            continue;
        }
        let initial = types.expand(counts);
        if inst.mode == Mode::Single || (winners.len() == 1 && semantics == ThenSemantics::DecisiveStop) {
            return Ok(SolveResult::found(plans(initial, None), SolverKind::Bucket, budget.spent()));
        }
        let rv = protocol.score_vector(winners.len()).expect("prefix of a defined vector");
        match inst.mode {
            Mode::Runoff => {
                let field = runoff_fields.entry(winners.clone()).or_insert_with(|| RunoffField {
                    base: election.tally_over(protocol, &winners).expect("validated").scores().to_vec(),
                    restricted: types.ballots.iter().map(|b| contribution(b, &winners, &rv, m)).collect(),
                });
                let rs = combine(&field.base, &field.restricted, counts, weight);
                if max_scorers(&rs, &winners).contains(inst.target) {
                    return Ok(SolveResult::found(plans(initial, None), SolverKind::Bucket, budget.spent()));
                }
            }
            Mode::RevotingRunoff => {
                if !revotes.contains_key(&winners) {
                    let Some(found) = revote(inst, &winners, &rv, k, weight, &budget) else {
                        return Ok(SolveResult::unknown(SolverKind::Bucket, budget.spent()));
                    };
                    revotes.insert(winners.clone(), found);
                }
                if let Some(second) = &revotes[&winners] {
                    let cert = plans(initial, Some(second.clone()));
                    return Ok(SolveResult::found(cert, SolverKind::Bucket, budget.spent()));
                }
            }
            Mode::Single => unreachable!(),
        }
    }
    Ok(SolveResult::not_found(SolverKind::Bucket, budget.spent()))
}

/// Fresh runoff ballots over `field` making the target win; `None` on budget
/// exhaustion.
fn revote(
    inst: &ManipulationInstance,
    field: &CandidateSet,
    rv: &[u64],
    k: u64,
    weight: u64,
    budget: &Budget,
) -> Option<Option<Vec<Ballot>>> {
    let m = inst.num_candidates();
    let types = BallotTypes::over(field, rv, m);
    let base = inst.election.tally_over(&inst.protocol, field).expect("validated").scores().to_vec();
    let mut round2 = Compositions::new(k, types.ballots.len());
    while let Some(counts) = round2.next_counts() {
        if !budget.charge() {
            return None;
        }
        let rs = combine(&base, &types.contributions, counts, weight);
        if max_scorers(&rs, field).contains(inst.target) {
            return Some(Some(types.expand(counts)));
        }
    }
    Some(None)
}

fn plans(initial: Vec<Ballot>, runoff: Option<Vec<Ballot>>) -> Certificate {
    let runoff: Vec<Option<Ballot>> = match runoff {
        Some(r) => r.into_iter().map(Some).collect(),
        None => vec![None; initial.len()],
    };
    Certificate::new(initial.into_iter().zip(runoff).map(|(initial, runoff)| VotePlan { initial, runoff }).collect())
}
