//! Complete search over manipulator vote plans.
//!
//! Equal-weight manipulators are interchangeable, so the initial round walks
//! multisets of ballots per weight class. In runoff mode the second round is
//! the restriction of the first. In revoting mode, once the initial winner
//! set `W` is fixed, the second round is a fresh single-round question over
//! `W`; its answer depends on `W` alone and is memoized.
//!
//! Veto instances can be searched over veto choices instead of full
//! ballots. A ballot's Veto contribution to a round depends only on which
//! member of that round's field it ranks last. Every plan therefore behaves
//! like one of:
//! * initial ballot `rest > v1` (runoff veto is `v1` if `v1` survives), or
//! * initial ballot `rest > v2 > v1` with `v1` eliminated and `v2` in `W`,
//!   whose runoff veto is `v2`.
//!
//! With revoting the runoff ballot is free, so only the runoff veto matters.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::election::{max_scorers, Ballot, CandidateId, CandidateSet};
use crate::instance::ManipulationInstance;
use crate::protocol::ScoringProtocol;
use crate::runoff::{Certificate, Mode, ThenSemantics, VotePlan};

use super::enumerate::{factorial, unrank_permutation};
use super::par::find_map_first;
use super::space::{weight_groups, Budget, PlanSpace};
use super::{SolveResult, SolverConfig, SolverKind};

/// Ballots one manipulator may cast over `universe`.
enum Options {
    /// Every ordering of the universe.
    Permutations(Vec<CandidateId>),
    /// `universe - {v} > v` for each veto target `v`.
    Vetoes(Vec<CandidateId>),
}

impl Options {
    fn new(universe: &CandidateSet, canonical: bool) -> Self {
        let items = universe.iter().collect();
        if canonical {
            Options::Vetoes(items)
        } else {
            Options::Permutations(items)
        }
    }

    fn count(&self) -> Option<u64> {
        match self {
            Options::Permutations(items) => factorial(items.len() as u64),
            Options::Vetoes(items) => Some(items.len() as u64),
        }
    }

    fn ballot(&self, idx: u64) -> Ballot {
        match self {
            Options::Permutations(items) => unrank_permutation(items, idx),
            Options::Vetoes(items) => {
                let v = items[idx as usize];
                let mut order: Vec<CandidateId> = items.iter().copied().filter(|&c| c != v).collect();
                order.push(v);
                Ballot::new(order)
            }
        }
    }

    fn veto(&self, idx: u64) -> CandidateId {
        match self {
            Options::Vetoes(items) => items[idx as usize],
            Options::Permutations(_) => unreachable!("veto choice requested from a permutation space"),
        }
    }
}

enum Step {
    Success(Certificate),
    Exhausted,
}

struct Exhausted;

struct Search<'a> {
    inst: &'a ManipulationInstance,
    semantics: ThenSemantics,
    canonical: bool,
    full: CandidateSet,
    /// Score vectors indexed by field size.
    vectors: Vec<Vec<u64>>,
    base: Vec<u64>,
    round1: Options,
    space: PlanSpace,
    budget: Budget,
    runoff_base: Mutex<HashMap<CandidateSet, Arc<Vec<u64>>>>,
    round2: Mutex<HashMap<CandidateSet, Option<Arc<Vec<Ballot>>>>>,
}

impl Search<'_> {
    fn runoff_base(&self, field: &CandidateSet) -> Arc<Vec<u64>> {
        if let Some(hit) = self.runoff_base.lock().unwrap().get(field) {
            return hit.clone();
        }
        let tally = self.inst.election.tally_over(&self.inst.protocol, field).expect("validated");
        let scores = Arc::new(tally.scores().to_vec());
        self.runoff_base.lock().unwrap().insert(field.clone(), scores.clone());
        scores
    }

    fn eval(&self, idx: u64) -> Option<Step> {
        if !self.budget.charge() {
            return Some(Step::Exhausted);
        }
        let inst = self.inst;
        let k = inst.weights.len();
        let mut choice = vec![0; k];
        self.space.decode(idx, &mut choice);
        let ballots: Vec<Ballot> = choice.iter().map(|&o| self.round1.ballot(o)).collect();

        let mut scores = self.base.clone();
        let vector = &self.vectors[self.full.len()];
        for (b, &w) in ballots.iter().zip(&inst.weights) {
            b.add_scores(&self.full, vector, w, &mut scores);
        }
        let winners = max_scorers(&scores, &self.full);
        if !winners.contains(inst.target) {
            return None;
        }
        if inst.mode == Mode::Single || (winners.len() == 1 && self.semantics == ThenSemantics::DecisiveStop) {
            return Some(Step::Success(initial_only(ballots)));
        }
        match inst.mode {
            Mode::Runoff if self.canonical => self.veto_runoff(&choice, ballots, &winners),
            Mode::Runoff => {
                if !self.budget.charge() {
                    return Some(Step::Exhausted);
                }
                let mut rs = (*self.runoff_base(&winners)).clone();
                let rv = &self.vectors[winners.len()];
                for (b, &w) in ballots.iter().zip(&inst.weights) {
                    b.add_scores(&winners, rv, w, &mut rs);
                }
                max_scorers(&rs, &winners).contains(inst.target).then(|| Step::Success(initial_only(ballots)))
            }
            Mode::RevotingRunoff => match self.round2(&winners) {
                Ok(Some(second)) => Some(Step::Success(Certificate::new(
                    ballots
                        .into_iter()
                        .zip(second.iter().cloned())
                        .map(|(initial, runoff)| VotePlan { initial, runoff: Some(runoff) })
                        .collect(),
                ))),
                Ok(None) => None,
                Err(Exhausted) => Some(Step::Exhausted),
            },
            Mode::Single => unreachable!(),
        }
    }

    /// Runoff mode over veto choices: manipulators whose initial veto was
    /// eliminated pick any survivor as their runoff veto.
    fn veto_runoff(&self, choice: &[u64], mut ballots: Vec<Ballot>, winners: &CandidateSet) -> Option<Step> {
        let inst = self.inst;
        let m = self.full.len();
        let vetoes: Vec<CandidateId> = choice.iter().map(|&o| self.round1.veto(o)).collect();
        let free: Vec<usize> = (0..vetoes.len()).filter(|&i| !winners.contains(vetoes[i])).collect();
        let survivors: Vec<CandidateId> = winners.iter().collect();
        let space = PlanSpace::new(weight_groups(&inst.weights, free.iter().copied()), survivors.len() as u64)
            .expect("runoff veto space is small");
        let base = self.runoff_base(winners);
        let rv = &self.vectors[winners.len()];
        let mut picks = vec![0; vetoes.len()];
        for j in 0..space.total() {
            if !self.budget.charge() {
                return Some(Step::Exhausted);
            }
            space.decode(j, &mut picks);
            for &i in &free {
                ballots[i] = Ballot::with_suffix(m, &[survivors[picks[i] as usize], vetoes[i]]);
            }
            let mut rs = (*base).clone();
            for (b, &w) in ballots.iter().zip(&inst.weights) {
                b.add_scores(winners, rv, w, &mut rs);
            }
            if max_scorers(&rs, winners).contains(inst.target) {
                return Some(Step::Success(initial_only(ballots)));
            }
        }
        None
    }

    /// First successful set of fresh runoff ballots over `field`, if any.
    fn round2(&self, field: &CandidateSet) -> Result<Option<Arc<Vec<Ballot>>>, Exhausted> {
        if let Some(hit) = self.round2.lock().unwrap().get(field) {
            return Ok(hit.clone());
        }
        let inst = self.inst;
        let options = Options::new(field, self.canonical);
        let result = options
            .count()
            .and_then(|n| PlanSpace::new(weight_groups(&inst.weights, 0..inst.weights.len()), n))
            .ok_or(Exhausted)
            .and_then(|space| {
                let base = self.runoff_base(field);
                let rv = &self.vectors[field.len()];
                let mut choice = vec![0; inst.weights.len()];
                for j in 0..space.total() {
                    if !self.budget.charge() {
                        return Err(Exhausted);
                    }
                    space.decode(j, &mut choice);
                    let ballots: Vec<Ballot> = choice.iter().map(|&o| options.ballot(o)).collect();
                    let mut rs = (*base).clone();
                    for (b, &w) in ballots.iter().zip(&inst.weights) {
                        b.add_scores(field, rv, w, &mut rs);
                    }
                    if max_scorers(&rs, field).contains(inst.target) {
                        return Ok(Some(Arc::new(ballots)));
                    }
                }
                Ok(None)
            })?;
        self.round2.lock().unwrap().insert(field.clone(), result.clone());
        Ok(result)
    }
}

fn initial_only(ballots: Vec<Ballot>) -> Certificate {
    Certificate::new(ballots.into_iter().map(VotePlan::initial_only).collect())
}

/// Exact search. Returns `Unknown` rather than `No` when the budget runs out.
/// The returned certificate is the first success in enumeration order, so
/// sequential and parallel runs agree.
pub fn solve_exhaustive(inst: &ManipulationInstance, semantics: ThenSemantics, config: &SolverConfig) -> SolveResult {
    let canonical = config.canonicalize && inst.protocol == ScoringProtocol::Veto;
    let kind = if canonical { SolverKind::ExhaustiveVeto } else { SolverKind::Exhaustive };
    let full = inst.election.candidates();
    let m = full.len();
    let vectors = (0..=m)
        .map(|size| if size == 0 { Vec::new() } else { inst.protocol.score_vector(size).expect("validated") })
        .collect();
    let round1 = Options::new(&full, canonical);
    let space = round1
        .count()
        .and_then(|n| PlanSpace::new(weight_groups(&inst.weights, 0..inst.weights.len()), n));
    let Some(space) = space else {
        return SolveResult::unknown(kind, 0);
    };
    let search = Search {
        inst,
        semantics,
        canonical,
        base: inst.election.tally(&inst.protocol).expect("validated").scores().to_vec(),
        full,
        vectors,
        round1,
        space,
        budget: Budget::new(config.budget),
        runoff_base: Mutex::new(HashMap::new()),
        round2: Mutex::new(HashMap::new()),
    };
    let found = find_map_first(search.space.total(), config.parallel, |idx| search.eval(idx));
    let nodes = search.budget.spent();
    match found {
        Some(Step::Success(cert)) => SolveResult::found(cert, kind, nodes),
        Some(Step::Exhausted) => SolveResult::unknown(kind, nodes),
        None => SolveResult::not_found(kind, nodes),
    }
}
