//! Same-system runoff evaluation and certificate verification.
//!
//! This is the reference evaluator: it builds every round's election
//! explicitly and is used to re-verify all solver output.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::election::{restrict_ballot, Ballot, CandidateId, CandidateSet, Election, WeightedVote};
use crate::instance::ManipulationInstance;
use crate::protocol::{ProtocolError, ScoringProtocol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Single,
    Runoff,
    RevotingRunoff,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::Single, Mode::Runoff, Mode::RevotingRunoff];
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Single => "single",
            Mode::Runoff => "runoff",
            Mode::RevotingRunoff => "revoting",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "single" => Ok(Mode::Single),
            "runoff" => Ok(Mode::Runoff),
            "revoting" => Ok(Mode::RevotingRunoff),
            _ => Err(format!("unknown mode {s:?}")),
        }
    }
}

/// What happens when the initial round has exactly one winner.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ThenSemantics {
    /// The unique initial winner wins outright.
    #[default]
    DecisiveStop,
    /// The unique initial winner faces a one-candidate second round.
    OneWinnerRunoff,
}

/// One manipulator's votes for both rounds. An absent runoff ballot means
/// the initial ballot restricted to the runoff candidates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VotePlan {
    pub initial: Ballot,
    pub runoff: Option<Ballot>,
}

impl VotePlan {
    pub fn initial_only(initial: Ballot) -> Self {
        VotePlan { initial, runoff: None }
    }
}

/// Vote plans aligned with the manipulators' weight list.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Certificate {
    pub plans: Vec<VotePlan>,
}

impl Certificate {
    pub fn new(plans: Vec<VotePlan>) -> Self {
        Certificate { plans }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundOutcome {
    pub initial_winners: CandidateSet,
    pub runoff_held: bool,
    pub overall_winners: CandidateSet,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RunoffError {
    #[error("expected {expected} vote plans, found {found}")]
    PlanCount { expected: usize, found: usize },
    #[error("manipulator {0}: initial ballot is not a permutation of the candidates")]
    InitialBallot(usize),
    #[error("manipulator {0}: runoff ballot given in single-round mode")]
    RunoffBallotInSingleMode(usize),
    #[error("manipulator {0}: runoff ballot given but no runoff is held")]
    RunoffBallotWithoutRunoff(usize),
    #[error("manipulator {0}: runoff ballot is not a permutation of the runoff candidates")]
    RunoffBallotField(usize),
    #[error("manipulator {0}: runoff ballot differs from the restricted initial ballot")]
    NotRestriction(usize),
    #[error("initial round has no winners")]
    NoInitialWinners,
    #[error(transparent)]
    Protocol(#[from] ProtocolError),
}

/// Runs the initial round and, when called for, the same-system runoff.
pub fn run_two_round(
    nonmanip: &Election,
    protocol: &ScoringProtocol,
    weights: &[u64],
    plans: &[VotePlan],
    mode: Mode,
    semantics: ThenSemantics,
) -> Result<RoundOutcome, RunoffError> {
    if plans.len() != weights.len() {
        return Err(RunoffError::PlanCount { expected: weights.len(), found: plans.len() });
    }
    let full = nonmanip.candidates();
    for (i, plan) in plans.iter().enumerate() {
        if !plan.initial.is_permutation_of(&full) {
            return Err(RunoffError::InitialBallot(i));
        }
        if mode == Mode::Single && plan.runoff.is_some() {
            return Err(RunoffError::RunoffBallotInSingleMode(i));
        }
    }

    let mut votes = nonmanip.votes().to_vec();
    votes.extend(plans.iter().zip(weights).map(|(plan, &w)| WeightedVote::new(plan.initial.clone(), w, 1)));
    let initial = Election::new(nonmanip.names().to_vec(), votes).expect("ballots checked above");
    let initial_winners = initial.winners(protocol)?;
    if initial_winners.is_empty() {
        return Err(RunoffError::NoInitialWinners);
    }

    let decided = mode == Mode::Single
        || (initial_winners.len() == 1 && semantics == ThenSemantics::DecisiveStop);
    if decided {
        if let Some(i) = plans.iter().position(|p| p.runoff.is_some()) {
            return Err(RunoffError::RunoffBallotWithoutRunoff(i));
        }
        return Ok(RoundOutcome { overall_winners: initial_winners.clone(), initial_winners, runoff_held: false });
    }

    let field = &initial_winners;
    let mut runoff_votes = Vec::with_capacity(nonmanip.votes().len() + plans.len());
    for vote in nonmanip.votes() {
        let ballot = restrict_ballot(&vote.ballot, field).expect("field is a nonempty subset");
        runoff_votes.push(WeightedVote::new(ballot, vote.weight, vote.multiplicity));
    }
    for (i, (plan, &w)) in plans.iter().zip(weights).enumerate() {
        let restricted = restrict_ballot(&plan.initial, field).expect("field is a nonempty subset");
        let ballot = match (&plan.runoff, mode) {
            (None, _) => restricted,
            (Some(b), _) if !b.is_permutation_of(field) => return Err(RunoffError::RunoffBallotField(i)),
            (Some(b), Mode::Runoff) if *b != restricted => return Err(RunoffError::NotRestriction(i)),
            (Some(b), _) => b.clone(),
        };
        runoff_votes.push(WeightedVote::new(ballot, w, 1));
    }

    let overall_winners = sub_election_winners(nonmanip, field, &runoff_votes, protocol)?;
    Ok(RoundOutcome { initial_winners, runoff_held: true, overall_winners })
}

/// Winners of an election held among `field` only, computed by relabelling
/// the survivors as a fresh election `0..|field|`.
fn sub_election_winners(
    parent: &Election,
    field: &CandidateSet,
    votes: &[WeightedVote],
    protocol: &ScoringProtocol,
) -> Result<CandidateSet, ProtocolError> {
    let members: Vec<CandidateId> = field.iter().collect();
    let local = |c: CandidateId| CandidateId(members.binary_search(&c).expect("ballot over field"));
    let names = members.iter().map(|&c| parent.name(c).to_string()).collect();
    let local_votes = votes
        .iter()
        .map(|v| {
            let order = v.ballot.order().iter().map(|&c| local(c)).collect();
            WeightedVote::new(Ballot::new(order), v.weight, v.multiplicity)
        })
        .collect();
    let sub = Election::new(names, local_votes).expect("restricted ballots are permutations of the field");
    Ok(sub.winners(protocol)?.iter().map(|c| members[c.0]).collect())
}

/// Checks a certificate: `Ok(true)` if it is well formed and makes the
/// target an overall winner, `Ok(false)` if it is well formed but fails,
/// and `Err` for structural violations.
pub fn verify_certificate(
    instance: &ManipulationInstance,
    cert: &Certificate,
    semantics: ThenSemantics,
) -> Result<bool, RunoffError> {
    let outcome = run_two_round(
        &instance.election,
        &instance.protocol,
        &instance.weights,
        &cert.plans,
        instance.mode,
        semantics,
    )?;
    Ok(outcome.overall_winners.contains(instance.target))
}
