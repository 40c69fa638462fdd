//! Reproducible experiment suites shared by the acceptance tests and the
//! `repro` command: instance generators plus cross-checks between solvers,
//! constructions and the X3C oracle.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::election::{Ballot, CandidateId, CandidateSet, Election, WeightedVote};
use crate::instance::ManipulationInstance;
use crate::protocol::ScoringProtocol;
use crate::reductions::{
    gen_halfapproval_construction, gen_veto_construction, halfapproval_cover_certificate, veto_cover_certificate,
    x3c_oracle, X3CInstance,
};
use crate::runoff::{run_two_round, verify_certificate, Certificate, Mode, ThenSemantics, VotePlan};
use crate::solvers::{
    greedy_single, map_ordered, solve_bucket, solve_exhaustive, solve_plurality_weighted, solve_single_round,
    SolveResult, SolverConfig, Verdict,
};

/// Outcome of one suite: how many cases ran, how many `Yes` answers were
/// independently re-verified, and every discrepancy found.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub name: String,
    pub cases: usize,
    pub certified: usize,
    /// `Yes` answers whose certificate failed re-verification.
    pub unsound: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl Report {
    fn new(name: &str) -> Self {
        Report { name: name.to_string(), ..Report::default() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.cases > 0
    }

    fn fail(&mut self, message: String) {
        self.failures.push(message);
    }

    fn check(&mut self, ok: bool, message: impl FnOnce() -> String) {
        if !ok {
            self.fail(message());
        }
    }

    /// Re-verifies a `Yes` answer's certificate with the reference evaluator.
    fn certify(&mut self, inst: &ManipulationInstance, semantics: ThenSemantics, r: &SolveResult, label: &str) {
        if r.verdict != Verdict::Yes {
            return;
        }
        match r.certificate.as_ref().map(|c| verify_certificate(inst, c, semantics)) {
            Some(Ok(true)) => self.certified += 1,
            other => {
                self.unsound += 1;
                self.fail(format!("{label}: {} answered yes but its certificate gives {other:?}", r.solver));
            }
        }
    }

    pub fn summary(&self) -> String {
        format!(
            "{} {}: {} cases, {} certificates re-verified, {} failures, {:.2?}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.cases,
            self.certified,
            self.failures.len(),
            self.elapsed,
        )
    }
}

fn timed(mut report: Report, start: Instant) -> Report {
    report.elapsed = start.elapsed();
    report
}

/// The five protocols with a vector for every candidate count.
pub fn builtin_protocols() -> [ScoringProtocol; 5] {
    [
        ScoringProtocol::Plurality,
        ScoringProtocol::Veto,
        ScoringProtocol::Borda,
        ScoringProtocol::HalfApproval,
        ScoringProtocol::Triviality,
    ]
}

/// Candidate names `p, a, b, c, ...`; the target is always `p`.
pub fn candidate_names(m: usize) -> Vec<String> {
    assert!(m <= 26, "at most 26 generated candidates");
    std::iter::once("p".to_string())
        .chain((b'a'..).filter(|&ch| ch != b'p').take(m.saturating_sub(1)).map(|ch| (ch as char).to_string()))
        .collect()
}

pub fn random_ballot<R: Rng>(rng: &mut R, m: usize) -> Ballot {
    let mut order: Vec<CandidateId> = (0..m).map(CandidateId).collect();
    order.shuffle(rng);
    Ballot::new(order)
}

/// Up to `max_voters` votes with weights in `1..=max_weight`.
pub fn random_election<R: Rng>(rng: &mut R, m: usize, max_voters: usize, max_weight: u64) -> Election {
    let voters = rng.gen_range(0..=max_voters);
    let votes = (0..voters)
        .map(|_| WeightedVote::new(random_ballot(rng, m), rng.gen_range(1..=max_weight), 1))
        .collect();
    Election::new(candidate_names(m), votes).expect("generated ballots are permutations")
}

/// The two-voter `(2, 1, 0, 0)` election where greedy voting loses the runoff.
pub fn counterexample_election() -> Election {
    let votes = vec![
        WeightedVote::single(Ballot::from_indices(&[1, 0, 3, 2])),
        WeightedVote::single(Ballot::from_indices(&[2, 1, 3, 0])),
    ];
    Election::new(["p", "a", "b", "c"].map(String::from).to_vec(), votes).expect("valid")
}

pub fn counterexample_instance(mode: Mode) -> ManipulationInstance {
    ManipulationInstance::unweighted(counterexample_election(), ScoringProtocol::two_one_zero(4), 1, CandidateId(0), mode)
        .expect("valid")
}

/// Tallies, the greedy ballot, and both ballots' two-round outcomes.
pub fn counterexample_suite() -> Report {
    let start = Instant::now();
    let mut report = Report::new("greedy counterexample");
    let e = counterexample_election();
    let protocol = ScoringProtocol::two_one_zero(4);
    let ids = |v: &[usize]| -> CandidateSet { v.iter().map(|&i| CandidateId(i)).collect() };
    let tally = e.tally(&protocol).expect("valid");
    report.cases += 1;
    report.check(tally.scores() == [1, 3, 2, 0], || format!("tallies {:?}, expected [1, 3, 2, 0]", tally.scores()));

    let inst = counterexample_instance(Mode::Runoff);
    let greedy = greedy_single(&inst).expect("one manipulator");
    report.cases += 1;
    report.check(greedy == Ballot::from_indices(&[0, 3, 2, 1]), || {
        format!("greedy ballot {}, expected p > c > b > a", e.format_ballot(&greedy))
    });
    let run = |ballot: &Ballot| {
        run_two_round(&e, &protocol, &[1], &[VotePlan::initial_only(ballot.clone())], Mode::Runoff, ThenSemantics::DecisiveStop)
            .expect("well formed")
    };
    let out = run(&greedy);
    report.cases += 1;
    report.check(out.initial_winners == ids(&[0, 1]) && !out.overall_winners.contains(CandidateId(0)), || {
        format!("greedy ballot gave initial {:?}, overall {:?}", e.format_set(&out.initial_winners), e.format_set(&out.overall_winners))
    });
    let tie = Ballot::from_indices(&[0, 2, 3, 1]);
    let out = run(&tie);
    report.cases += 1;
    report.check(out.initial_winners == ids(&[0, 1, 2]) && out.overall_winners.contains(CandidateId(0)), || {
        format!("p > b > c > a gave initial {:?}, overall {:?}", e.format_set(&out.initial_winners), e.format_set(&out.overall_winners))
    });

    let exhaustive = solve_exhaustive(&inst, ThenSemantics::DecisiveStop, &SolverConfig::default());
    report.cases += 1;
    report.check(exhaustive.verdict == Verdict::Yes, || "exhaustive search missed the runoff manipulation".into());
    report.certify(&inst, ThenSemantics::DecisiveStop, &exhaustive, "exhaustive");
    timed(report, start)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for at in 0..=p.len() {
            let mut q = p.clone();
            q.insert(at, n - 1);
            out.push(q);
        }
    }
    out
}

/// One representative of every X3C instance with the given `k` (at most 2)
/// and `n` triples, up to relabelling elements and reordering triples.
/// Representatives are the least sorted mask lists and come out sorted.
pub fn x3c_orbits(k: usize, n: usize) -> Vec<X3CInstance> {
    assert!((1..=2).contains(&k), "orbit enumeration is for k <= 2");
    let size = 3 * k;
    let masks: Vec<u8> = (0u8..1 << size).filter(|m| m.count_ones() == 3).collect();
    let relabel: Vec<Vec<u8>> = permutations(size)
        .iter()
        .map(|p| {
            (0u16..1 << size)
                .map(|mask| (0..size).filter(|&e| mask >> e & 1 == 1).fold(0u8, |acc, e| acc | 1 << p[e]))
                .collect()
        })
        .collect();
    let mut seen = BTreeSet::new();
    let mut pick = vec![0usize; n];
    let mut mapped = vec![0u8; n];
    loop {
        let current: Vec<u8> = pick.iter().map(|&i| masks[i]).collect();
        let mut best = current.clone();
        for table in &relabel {
            for (slot, &mask) in mapped.iter_mut().zip(&current) {
                *slot = table[mask as usize];
            }
            mapped.sort_unstable();
            if mapped < best {
                best.copy_from_slice(&mapped);
            }
        }
        seen.insert(best);
        // Next nondecreasing index sequence.
        let Some(pos) = (0..n).rev().find(|&i| pick[i] + 1 < masks.len()) else { break };
        let next = pick[pos] + 1;
        pick[pos..].iter_mut().for_each(|x| *x = next);
    }
    seen.into_iter()
        .map(|form| {
            let sets = form
                .iter()
                .map(|&mask| {
                    let els: Vec<usize> = (0..size).filter(|&e| mask >> e & 1 == 1).map(|e| e + 1).collect();
                    [els[0], els[1], els[2]]
                })
                .collect();
            X3CInstance::new(k, sets).expect("valid triples")
        })
        .collect()
}

/// Every X3C instance with `k <= 2` and `3 <= n <= 5`, up to isomorphism.
pub fn desk_scale_x3c() -> Vec<X3CInstance> {
    (1..=2).flat_map(|k| (3..=5).flat_map(move |n| x3c_orbits(k, n))).collect()
}

#[derive(Clone, Debug)]
pub struct VetoSweep {
    /// Solver verdicts in both runoff modes against the X3C oracle.
    pub equivalence: Report,
    /// Prescribed cover certificates on covered instances.
    pub forward: Report,
    pub instances: usize,
    pub uncovered: usize,
}

/// Builds the Veto election for each instance, decides it with the
/// canonical exhaustive search in both runoff modes and compares with the
/// oracle; checks the cover certificate on covered instances.
pub fn veto_sweep(instances: &[X3CInstance], config: &SolverConfig) -> VetoSweep {
    let start = Instant::now();
    let mut equivalence = Report::new("veto reduction equivalence");
    let mut forward = Report::new("veto cover certificates");
    let inner = SolverConfig { parallel: false, canonicalize: true, ..config.clone() };
    let rows = map_ordered(instances.to_vec(), config.parallel, |x3c| {
        let cover = x3c_oracle(x3c);
        let built = gen_veto_construction(x3c, Mode::Runoff).expect("n >= 3");
        let results: Vec<(Mode, ManipulationInstance, SolveResult)> = [Mode::Runoff, Mode::RevotingRunoff]
            .into_iter()
            .map(|mode| {
                let inst = built.instance.with_mode(mode);
                let r = solve_exhaustive(&inst, ThenSemantics::DecisiveStop, &inner);
                (mode, inst, r)
            })
            .collect();
        (cover, built, results)
    });
    let mut uncovered = 0;
    for (x3c, (cover, built, results)) in instances.iter().zip(rows) {
        let label = format!("k={} sets={:?}", x3c.k(), x3c.sets());
        uncovered += usize::from(cover.is_none());
        for (mode, inst, r) in &results {
            equivalence.cases += 1;
            let expected = if cover.is_some() { Verdict::Yes } else { Verdict::No };
            equivalence.check(r.verdict == expected, || format!("{label} {mode}: solver {:?}, oracle {expected:?}", r.verdict));
            equivalence.certify(inst, ThenSemantics::DecisiveStop, r, &label);
        }
        let Some(cover) = cover else { continue };
        let cert = veto_cover_certificate(x3c, &cover).expect("oracle cover is exact");
        let layout = &built.layout;
        let mut expected = built.instance.election.candidates();
        expected.remove(layout.ell);
        for &j in &cover {
            expected.remove(layout.s[j]);
        }
        for mode in [Mode::Runoff, Mode::RevotingRunoff] {
            forward.cases += 1;
            let inst = built.instance.with_mode(mode);
            match verify_certificate(&inst, &cert, ThenSemantics::DecisiveStop) {
                Ok(true) => forward.certified += 1,
                other => forward.fail(format!("{label} {mode}: cover certificate gives {other:?}")),
            }
            let out = run_two_round(&inst.election, &inst.protocol, &inst.weights, &cert.plans, mode, ThenSemantics::DecisiveStop);
            forward.check(out.as_ref().is_ok_and(|o| o.initial_winners == expected), || {
                format!("{label} {mode}: initial winners {:?}", out.map(|o| inst.election.format_set(&o.initial_winners)))
            });
        }
    }
    equivalence.notes.push(format!("{} instances, {} without a cover", instances.len(), uncovered));
    VetoSweep {
        equivalence: timed(equivalence, start),
        forward: timed(forward, start),
        instances: instances.len(),
        uncovered,
    }
}

/// Candidate count and prescribed certificate of the padded HalfApproval
/// election on the covered instances with even `k`.
pub fn halfapproval_forward(instances: &[X3CInstance], config: &SolverConfig) -> Report {
    let start = Instant::now();
    let mut report = Report::new("halfapproval cover certificates");
    let mut initial_round_blocked = 0;
    for x3c in instances.iter().filter(|x| x.k() % 2 == 0 && x.n() >= 3) {
        let Some(cover) = x3c_oracle(x3c) else { continue };
        let label = format!("sets={:?}", x3c.sets());
        let built = gen_halfapproval_construction(x3c, Mode::Runoff).expect("k even, n >= 3");
        let (k, n) = (x3c.k(), x3c.n());
        report.cases += 1;
        report.check(built.instance.num_candidates() == 2 * (n + 5 * k / 2 + 3), || {
            format!("{label}: {} candidates", built.instance.num_candidates())
        });
        let cert = halfapproval_cover_certificate(x3c, &cover).expect("oracle cover is exact");
        match verify_certificate(&built.instance, &cert, ThenSemantics::DecisiveStop) {
            Ok(true) => report.certified += 1,
            other => report.fail(format!("{label}: cover certificate gives {other:?}")),
        }
        let single = built.instance.with_mode(Mode::Single);
        let r = solve_single_round(&single, config).expect("single mode");
        if r.exact && r.verdict == Verdict::No {
            initial_round_blocked += 1;
        }
    }
    report.notes.push(format!(
        "{initial_round_blocked} of {} elections admit no manipulator ballot making p even an initial winner",
        report.cases
    ));
    timed(report, start)
}

fn random_manipulators<R: Rng>(rng: &mut R, max_count: usize, max_weight: u64) -> Vec<u64> {
    let count = rng.gen_range(0..=max_count);
    (0..count).map(|_| rng.gen_range(1..=max_weight)).collect()
}

/// Weighted Plurality: the fast path against exhaustive search.
pub fn plurality_suite(seed: u64, count: usize, config: &SolverConfig) -> Report {
    let start = Instant::now();
    let mut report = Report::new("plurality fast path");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..count {
        let m = rng.gen_range(1..=4);
        let e = random_election(&mut rng, m, 4, 5);
        let weights = random_manipulators(&mut rng, 3, 5);
        for mode in Mode::ALL {
            let inst = ManipulationInstance::new(e.clone(), ScoringProtocol::Plurality, weights.clone(), CandidateId(0), mode)
                .expect("valid");
            let fast = solve_plurality_weighted(&inst, ThenSemantics::DecisiveStop).expect("plurality");
            let full = solve_exhaustive(&inst, ThenSemantics::DecisiveStop, config);
            report.cases += 1;
            report.check(fast.verdict == full.verdict, || {
                format!("case {case} {mode}: fast path {:?}, exhaustive {:?}", fast.verdict, full.verdict)
            });
            report.certify(&inst, ThenSemantics::DecisiveStop, &fast, "fast path");
            report.certify(&inst, ThenSemantics::DecisiveStop, &full, "exhaustive");
        }
    }
    timed(report, start)
}

/// Unweighted, at most three candidates: bucket enumeration against
/// exhaustive search for every built-in protocol and mode.
pub fn bucket_suite(seed: u64, count: usize, config: &SolverConfig) -> Report {
    let start = Instant::now();
    let mut report = Report::new("bucket enumeration");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let full_search = SolverConfig { canonicalize: false, ..config.clone() };
    for case in 0..count {
        let m = rng.gen_range(1..=3);
        let e = random_election(&mut rng, m, 4, 1);
        let k = rng.gen_range(0..=4);
        for protocol in builtin_protocols() {
            for mode in Mode::ALL {
                let inst = ManipulationInstance::unweighted(e.clone(), protocol.clone(), k, CandidateId(0), mode).expect("valid");
                let bucket = solve_bucket(&inst, ThenSemantics::DecisiveStop, config).expect("small uniform instance");
                let full = solve_exhaustive(&inst, ThenSemantics::DecisiveStop, &full_search);
                report.cases += 1;
                report.check(bucket.verdict == full.verdict && bucket.verdict != Verdict::Unknown, || {
                    format!("case {case} {protocol} {mode}: bucket {:?}, exhaustive {:?}", bucket.verdict, full.verdict)
                });
                report.certify(&inst, ThenSemantics::DecisiveStop, &bucket, "bucket");
                report.certify(&inst, ThenSemantics::DecisiveStop, &full, "exhaustive");
            }
        }
    }
    timed(report, start)
}

fn random_protocol<R: Rng>(rng: &mut R, m: usize) -> ScoringProtocol {
    match rng.gen_range(0..7) {
        i @ 0..=4 => builtin_protocols()[i].clone(),
        5 => ScoringProtocol::two_one_zero(4),
        _ => {
            let mut v: Vec<u64> = (0..m).map(|_| rng.gen_range(0..=4)).collect();
            v.sort_unstable_by(|a, b| b.cmp(a));
            ScoringProtocol::explicit(v).expect("sorted")
        }
    }
}

/// One manipulator, one round: the greedy ballot wins exactly when some
/// ballot does.
pub fn greedy_suite(seed: u64, count: usize, config: &SolverConfig) -> Report {
    let start = Instant::now();
    let mut report = Report::new("greedy single-round exactness");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..count {
        let m = rng.gen_range(1..=4);
        let e = random_election(&mut rng, m, 5, 3);
        let protocol = random_protocol(&mut rng, m);
        let weight = rng.gen_range(1..=3);
        let inst = ManipulationInstance::new(e, protocol.clone(), vec![weight], CandidateId(0), Mode::Single).expect("valid");
        let ballot = greedy_single(&inst).expect("one manipulator");
        let cert = Certificate::new(vec![VotePlan::initial_only(ballot)]);
        let greedy_wins = verify_certificate(&inst, &cert, ThenSemantics::DecisiveStop).expect("well formed");
        let full = solve_exhaustive(&inst, ThenSemantics::DecisiveStop, &SolverConfig { canonicalize: false, ..config.clone() });
        report.cases += 1;
        report.check(greedy_wins == (full.verdict == Verdict::Yes), || {
            format!("case {case} {protocol}: greedy {greedy_wins}, exhaustive {:?}", full.verdict)
        });
        if greedy_wins {
            report.certified += 1;
        }
        report.certify(&inst, ThenSemantics::DecisiveStop, &full, "exhaustive");
    }
    timed(report, start)
}

/// Whether a lone initial winner stops the election or faces a
/// one-candidate runoff never changes the overall winners.
pub fn semantics_suite(seed: u64, count: usize) -> Report {
    let start = Instant::now();
    let mut report = Report::new("unique-winner semantics coincide");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..count {
        let m = rng.gen_range(1..=4);
        let e = random_election(&mut rng, m, 5, 3);
        let protocol = random_protocol(&mut rng, m);
        let weights = random_manipulators(&mut rng, 2, 3);
        let plans: Vec<VotePlan> = weights.iter().map(|_| VotePlan::initial_only(random_ballot(&mut rng, m))).collect();
        for mode in Mode::ALL {
            let [stop, onward] = [ThenSemantics::DecisiveStop, ThenSemantics::OneWinnerRunoff]
                .map(|s| run_two_round(&e, &protocol, &weights, &plans, mode, s).map(|o| o.overall_winners));
            report.cases += 1;
            report.check(stop.is_ok() && stop == onward, || format!("case {case} {protocol} {mode}: {stop:?} vs {onward:?}"));
        }
    }
    timed(report, start)
}
