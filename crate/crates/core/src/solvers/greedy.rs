use crate::election::{max_scorers, Ballot, CandidateId, CandidateSet};
use crate::instance::ManipulationInstance;
use crate::protocol::ScoringProtocol;
use crate::runoff::{verify_certificate, Certificate, Mode, ThenSemantics, VotePlan};

use super::{solve_exhaustive, SolveError, SolveResult, SolverConfig, SolverKind, Verdict};

/// The greedy manipulator ballot: `target` first, then the other members of
/// `field` from lowest to highest current score (ties by ascending id), so
/// the largest remaining points go to the weakest rivals.
pub fn greedy_ballot(scores: &[u64], field: &CandidateSet, target: CandidateId) -> Ballot {
    debug_assert!(field.contains(target));
    let mut rest: Vec<CandidateId> = field.iter().filter(|&c| c != target).collect();
    rest.sort_by_key(|&c| (scores[c.0], c.0));
    let mut order = Vec::with_capacity(rest.len() + 1);
    order.push(target);
    order.extend(rest);
    Ballot::new(order)
}

/// Greedy ballot for a one-manipulator instance against the nonmanipulators'
/// initial-round tally.
pub fn greedy_single(instance: &ManipulationInstance) -> Result<Ballot, SolveError> {
    if instance.weights.len() != 1 {
        return Err(SolveError::ManipulatorCount(instance.weights.len()));
    }
    let tally = instance.election.tally(&instance.protocol).expect("instance protocol validated");
    Ok(greedy_ballot(tally.scores(), &instance.election.candidates(), instance.target))
}

/// True when greedy voting, one manipulator after another, is known to find
/// a single-round manipulation whenever one exists.
pub fn greedy_is_exact(instance: &ManipulationInstance) -> bool {
    instance.weights.len() <= 1
        || matches!(instance.protocol, ScoringProtocol::Plurality | ScoringProtocol::Triviality)
        || (instance.protocol == ScoringProtocol::Veto && instance.is_uniform())
}

fn greedy_round(scores: &mut [u64], field: &CandidateSet, vector: &[u64], weights: &[u64], target: CandidateId) -> Vec<Ballot> {
    weights
        .iter()
        .map(|&w| {
            let ballot = greedy_ballot(scores, field, target);
            ballot.add_scores(field, vector, w, scores);
            ballot
        })
        .collect()
}

/// Each manipulator in turn votes greedily against the running tally. In a
/// revoting runoff they vote greedily again against the runoff tally. This is
/// a heuristic outside single-round play; `exact` reports when a `No` is
/// trustworthy.
pub fn solve_greedy(instance: &ManipulationInstance, semantics: ThenSemantics) -> SolveResult {
    let election = &instance.election;
    let full = election.candidates();
    let m = full.len();
    let vector = instance.protocol.score_vector(m).expect("instance protocol validated");
    let mut scores = election.tally(&instance.protocol).expect("validated").scores().to_vec();
    let initial = greedy_round(&mut scores, &full, &vector, &instance.weights, instance.target);
    let mut nodes = initial.len() as u64;

    let winners = max_scorers(&scores, &full);
    let runoff_held = instance.mode != Mode::Single
        && (winners.len() > 1 || semantics == ThenSemantics::OneWinnerRunoff);
    let mut runoff = vec![None; initial.len()];
    if instance.mode == Mode::RevotingRunoff && runoff_held && winners.contains(instance.target) {
        let rv = instance.protocol.score_vector(winners.len()).expect("prefix of a defined vector");
        let mut rs = election.tally_over(&instance.protocol, &winners).expect("validated").scores().to_vec();
        let second = greedy_round(&mut rs, &winners, &rv, &instance.weights, instance.target);
        nodes += second.len() as u64;
        runoff = second.into_iter().map(Some).collect();
    }

    let cert = Certificate::new(
        initial.into_iter().zip(runoff).map(|(initial, runoff)| VotePlan { initial, runoff }).collect(),
    );
    let success = verify_certificate(instance, &cert, semantics).expect("greedy plans are well formed");
    let exact = instance.mode == Mode::Single && greedy_is_exact(instance);
    if success {
        SolveResult::found(cert, SolverKind::Greedy, nodes)
    } else {
        SolveResult { exact, ..SolveResult::not_found(SolverKind::Greedy, nodes) }
    }
}

/// Single-round manipulation: greedy iteration, falling back to exhaustive
/// search when greedy fails outside its exactness range.
pub fn solve_single_round(instance: &ManipulationInstance, config: &SolverConfig) -> Result<SolveResult, SolveError> {
    if instance.mode != Mode::Single {
        return Err(SolveError::WrongMode { expected: Mode::Single, found: instance.mode });
    }
    let greedy = solve_greedy(instance, ThenSemantics::DecisiveStop);
    if greedy.verdict == Verdict::Yes || greedy.exact {
        return Ok(greedy);
    }
    let full = solve_exhaustive(instance, ThenSemantics::DecisiveStop, config);
    Ok(SolveResult {
        solver: SolverKind::GreedyThenExhaustive,
        nodes_explored: full.nodes_explored + greedy.nodes_explored,
        ..full
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::election::{Election, WeightedVote};

    fn ids(v: &[usize]) -> CandidateSet {
        v.iter().map(|&i| CandidateId(i)).collect()
    }

    fn counterexample(mode: Mode) -> ManipulationInstance {
        let votes = vec![
            WeightedVote::single(Ballot::from_indices(&[1, 0, 3, 2])),
            WeightedVote::single(Ballot::from_indices(&[2, 1, 3, 0])),
        ];
        let e = Election::new(["p", "a", "b", "c"].map(String::from).to_vec(), votes).unwrap();
        ManipulationInstance::unweighted(e, ScoringProtocol::two_one_zero(4), 1, CandidateId(0), mode).unwrap()
    }

    #[test]
    fn greedy_ballot_on_the_counterexample() {
        let inst = counterexample(Mode::Runoff);
        assert_eq!(greedy_single(&inst).unwrap(), Ballot::from_indices(&[0, 3, 2, 1]));
    }

    #[test]
    fn greedy_vetoes_the_strongest_rival() {
        // p:0, x:5, y:3 under veto: p > y > x.
        let b = greedy_ballot(&[0, 5, 3], &ids(&[0, 1, 2]), CandidateId(0));
        assert_eq!(b, Ballot::from_indices(&[0, 2, 1]));
        assert_eq!(greedy_ballot(&[7], &ids(&[0]), CandidateId(0)), Ballot::from_indices(&[0]));
    }

    #[test]
    fn greedy_single_rejects_wrong_manipulator_counts() {
        let inst = counterexample(Mode::Single);
        let none = ManipulationInstance { weights: vec![], ..inst.clone() };
        let two = ManipulationInstance { weights: vec![1, 1], ..inst };
        assert_eq!(greedy_single(&none), Err(SolveError::ManipulatorCount(0)));
        assert_eq!(greedy_single(&two), Err(SolveError::ManipulatorCount(2)));
    }

    #[test]
    fn greedy_wins_single_round_but_fails_with_runoff() {
        let single = solve_greedy(&counterexample(Mode::Single), ThenSemantics::DecisiveStop);
        assert!(single.manipulable());
        let runoff = solve_greedy(&counterexample(Mode::Runoff), ThenSemantics::DecisiveStop);
        assert_eq!(runoff.verdict, Verdict::No);
        assert!(!runoff.exact);
        let revote = solve_greedy(&counterexample(Mode::RevotingRunoff), ThenSemantics::DecisiveStop);
        assert_eq!(revote.verdict, Verdict::No);
    }

    #[test]
    fn single_round_requires_single_mode() {
        let err = solve_single_round(&counterexample(Mode::Runoff), &SolverConfig::default()).unwrap_err();
        assert_eq!(err, SolveError::WrongMode { expected: Mode::Single, found: Mode::Runoff });
    }

    #[test]
    fn zero_manipulators_is_a_winner_check() {
        let e = Election::new(
            vec!["p".into(), "q".into()],
            vec![WeightedVote::single(Ballot::from_indices(&[1, 0]))],
        )
        .unwrap();
        let inst = ManipulationInstance::unweighted(e, ScoringProtocol::Plurality, 0, CandidateId(0), Mode::Single).unwrap();
        let r = solve_single_round(&inst, &SolverConfig::default()).unwrap();
        assert_eq!(r.verdict, Verdict::No);
        assert!(r.exact);
    }
}
