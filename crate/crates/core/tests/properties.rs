use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use runoff_core::election::{restrict_ballot, Ballot, CandidateId, CandidateSet, Election, WeightedVote};
use runoff_core::experiments::{builtin_protocols, candidate_names, random_ballot, random_election};
use runoff_core::format::{parse_election, serialize_election};
use runoff_core::instance::ManipulationInstance;
use runoff_core::protocol::ScoringProtocol;
use runoff_core::reductions::{gen_halfapproval_construction, gen_veto_construction, X3CInstance};
use runoff_core::runoff::{run_two_round, verify_certificate, Certificate, Mode, ThenSemantics, VotePlan};
use runoff_core::solvers::{solve_exhaustive, SolverConfig, Verdict};

fn election(seed: u64, m: usize, max_weight: u64) -> Election {
    random_election(&mut ChaCha8Rng::seed_from_u64(seed), m, 6, max_weight)
}

fn protocol() -> impl Strategy<Value = ScoringProtocol> {
    (0..5usize).prop_map(|i| builtin_protocols()[i].clone())
}

fn mode() -> impl Strategy<Value = Mode> {
    (0..3usize).prop_map(|i| Mode::ALL[i])
}

fn semantics() -> impl Strategy<Value = ThenSemantics> {
    prop_oneof![Just(ThenSemantics::DecisiveStop), Just(ThenSemantics::OneWinnerRunoff)]
}

fn subset(m: usize, mask: u32) -> CandidateSet {
    let mut set = CandidateSet::new();
    for c in (0..m).filter(|c| mask & (1 << c) != 0) {
        set.insert(CandidateId(c));
    }
    set
}

fn x3c() -> impl Strategy<Value = X3CInstance> {
    (1..=3usize)
        .prop_flat_map(|k| {
            let triple = proptest::sample::subsequence((1..=3 * k).collect::<Vec<_>>(), 3);
            (Just(k), proptest::collection::vec(triple, 0..8))
        })
        .prop_map(|(k, sets)| X3CInstance::new(k, sets.into_iter().map(|s| [s[0], s[1], s[2]]).collect()).unwrap())
}

proptest! {
    #[test]
    fn outcome_ignores_vote_order(seed: u64, m in 1..=5usize, p in protocol(), mode in mode(), s in semantics()) {
        let e = election(seed, m, 3);
        let mut votes = e.votes().to_vec();
        votes.shuffle(&mut ChaCha8Rng::seed_from_u64(seed ^ 1));
        let shuffled = Election::new(e.names().to_vec(), votes).unwrap();
        prop_assert_eq!(
            run_two_round(&e, &p, &[], &[], mode, s).unwrap(),
            run_two_round(&shuffled, &p, &[], &[], mode, s).unwrap()
        );
    }

    #[test]
    fn tally_conserves_points(seed: u64, m in 1..=6usize, p in protocol()) {
        let e = election(seed, m, 5);
        let per_ballot: u64 = p.score_vector(m).unwrap().iter().sum();
        let tally = e.tally(&p).unwrap();
        prop_assert_eq!(tally.total(), e.total_weight() * per_ballot);
        prop_assert_eq!(tally.scores().iter().sum::<u64>(), tally.total());
    }

    #[test]
    fn winners_survive_positive_affine_maps(seed: u64, m in 1..=6usize, p in protocol(), a in 1..5u64, b in 0..5u64) {
        let e = election(seed, m, 4);
        let mapped: Vec<u64> = p.score_vector(m).unwrap().iter().map(|x| a * x + b).collect();
        let mapped = ScoringProtocol::explicit(mapped).unwrap();
        prop_assert_eq!(e.winners(&p).unwrap(), e.winners(&mapped).unwrap());
    }

    #[test]
    fn restriction_is_idempotent(seed: u64, m in 1..=7usize, mask in 1u32..128) {
        let ballot = random_ballot(&mut ChaCha8Rng::seed_from_u64(seed), m);
        let field = subset(m, mask);
        prop_assume!(!field.is_empty());
        let once = restrict_ballot(&ballot, &field).unwrap();
        prop_assert!(once.is_permutation_of(&field));
        prop_assert_eq!(&restrict_ballot(&once, &field).unwrap(), &once);
        prop_assert_eq!(restrict_ballot(&ballot, &CandidateSet::full(m)).unwrap(), ballot);
    }

    #[test]
    fn election_file_round_trips(seed: u64, m in 1..=6usize, mult in proptest::collection::vec(1..4u64, 0..5)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut votes = election(seed, m, 9).votes().to_vec();
        votes.extend(mult.iter().map(|&n| WeightedVote::new(random_ballot(&mut rng, m), 2, n)));
        let e = Election::new(candidate_names(m), votes).unwrap();
        prop_assert_eq!(parse_election(&serialize_election(&e)).unwrap(), e);
    }

    #[test]
    fn veto_construction_sizes(x in x3c()) {
        let (k, n) = (x.k(), x.n());
        match gen_veto_construction(&x, Mode::Runoff) {
            Ok(c) => {
                prop_assert_eq!(c.instance.num_candidates(), 4 * k + n + 3);
                prop_assert_eq!(c.instance.election.total_weight() as usize, 4 * n + 12 * k + 7);
                prop_assert_eq!(c.instance.weights.len(), k);
            }
            Err(_) => prop_assert!(n < 3),
        }
    }

    #[test]
    fn halfapproval_construction_sizes(x in x3c()) {
        let (k, n) = (x.k(), x.n());
        match gen_halfapproval_construction(&x, Mode::Runoff) {
            Ok(c) => {
                prop_assert!(k % 2 == 0 && n >= 3);
                prop_assert_eq!(c.instance.num_candidates(), 5 * k + 2 * n + 6);
                prop_assert_eq!(c.layout.rh.len(), n + 3 * k / 2 + 3);
                let expected = 4 * n + 12 * k + 7 - 3 * (k - k / 2) + 3 * c.layout.rh.len();
                prop_assert_eq!(c.instance.election.total_weight() as usize, expected);
                prop_assert_eq!(c.instance.weights.len(), 1);
            }
            Err(_) => prop_assert!(k % 2 == 1 || n < 3),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_veto_search_is_complete(seed: u64, m in 2..=5usize, k in 0..=2usize, mode in mode(), s in semantics()) {
        let e = election(seed, m, 2);
        let inst = ManipulationInstance::unweighted(e, ScoringProtocol::Veto, k, CandidateId(0), mode).unwrap();
        let full = SolverConfig { canonicalize: false, ..SolverConfig::default() };
        prop_assert_eq!(
            solve_exhaustive(&inst, s, &SolverConfig::default()).verdict,
            solve_exhaustive(&inst, s, &full).verdict
        );
    }

    #[test]
    fn parallel_and_sequential_agree(seed: u64, m in 1..=4usize, k in 0..=2usize, p in protocol(), mode in mode()) {
        let e = election(seed, m, 3);
        let inst = ManipulationInstance::unweighted(e, p, k, CandidateId(0), mode).unwrap();
        let s = ThenSemantics::DecisiveStop;
        let par = solve_exhaustive(&inst, s, &SolverConfig::default());
        let seq = solve_exhaustive(&inst, s, &SolverConfig::sequential());
        prop_assert_eq!(par.verdict, seq.verdict);
        prop_assert_eq!(par.certificate, seq.certificate);
    }

    #[test]
    fn extra_loyal_manipulator_keeps_plans_valid(
        seed: u64,
        m in 1..=4usize,
        k in 0..=2usize,
        p in protocol(),
        mode in mode(),
        s in semantics(),
    ) {
        let e = election(seed, m, 3);
        let inst = ManipulationInstance::unweighted(e, p.clone(), k, CandidateId(0), mode).unwrap();
        let result = solve_exhaustive(&inst, s, &SolverConfig::default());
        prop_assume!(result.verdict == Verdict::Yes);
        let cert = result.certificate.unwrap();
        prop_assert_eq!(verify_certificate(&inst, &cert, s), Ok(true));

        let mut plans: Vec<VotePlan> = cert.plans.into_iter().map(|plan| VotePlan::initial_only(plan.initial)).collect();
        let mut loyal: Vec<CandidateId> = (0..m).map(CandidateId).collect();
        loyal.rotate_left(inst.target.index());
        plans.push(VotePlan::initial_only(Ballot::new(loyal)));
        let bigger = ManipulationInstance::unweighted(inst.election.clone(), p.clone(), k + 1, inst.target, mode).unwrap();
        let verdict = verify_certificate(&bigger, &Certificate::new(plans), s);
        prop_assert!(verdict.is_ok(), "{:?}", verdict);
        if p == ScoringProtocol::Plurality {
            prop_assert_eq!(verdict, Ok(true));
        }
    }
}
