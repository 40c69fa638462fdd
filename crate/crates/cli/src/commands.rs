use std::path::Path;

use runoff_core::election::{Ballot, Election};
use runoff_core::experiments::{
    bucket_suite, counterexample_suite, desk_scale_x3c, greedy_suite, halfapproval_forward, plurality_suite,
    semantics_suite, veto_sweep, Report,
};
use runoff_core::format::{parse_election, parse_x3c, serialize_election, CertificateFile, X3CFileError};
use runoff_core::instance::ManipulationInstance;
use runoff_core::protocol::ScoringProtocol;
use runoff_core::reductions::{
    gen_halfapproval_construction, gen_veto_construction, halfapproval_cover_certificate, veto_cover_certificate,
    x3c_oracle,
};
use runoff_core::runoff::{run_two_round, verify_certificate, Mode, ThenSemantics};
use runoff_core::solvers::{solve, SolverConfig, Strategy, Verdict};

use crate::{parse_error, read, semantic_error, write, CmdResult, Failure, Suite};

fn semantics(nw: bool) -> ThenSemantics {
    if nw {
        ThenSemantics::OneWinnerRunoff
    } else {
        ThenSemantics::DecisiveStop
    }
}

fn load_election(path: &Path) -> Result<Election, Failure> {
    parse_election(&read(path)?).map_err(|e| parse_error(format!("{}: {e}", path.display())))
}

fn protocol_for(tag: &str, e: &Election) -> Result<ScoringProtocol, Failure> {
    let protocol: ScoringProtocol = tag.parse().map_err(semantic_error)?;
    protocol.score_vector(e.num_candidates()).map_err(semantic_error)?;
    Ok(protocol)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn winners(path: &Path, protocol: &str, mode: &str, nw: bool) -> CmdResult {
    let e = load_election(path)?;
    let protocol = protocol_for(protocol, &e)?;
    let mode: Mode = mode.parse().map_err(semantic_error)?;
    let out = run_two_round(&e, &protocol, &[], &[], mode, semantics(nw)).map_err(semantic_error)?;
    println!("initial winners: {}", e.format_set(&out.initial_winners));
    println!("runoff held: {}", yes_no(out.runoff_held));
    println!("overall winners: {}", e.format_set(&out.overall_winners));
    Ok(0)
}

pub struct ManipulateArgs<'a> {
    pub election: &'a Path,
    pub protocol: &'a str,
    pub mode: &'a str,
    pub manipulators: &'a str,
    pub strategy: &'a str,
    pub certificate: Option<&'a Path>,
    pub target: &'a str,
    pub budget: Option<u64>,
    pub sequential: bool,
    pub nw_semantics: bool,
}

/// `count=K` or `weights=w1,w2,...`.
fn parse_manipulators(spec: &str) -> Result<Vec<u64>, Failure> {
    let bad = || parse_error(format!("bad manipulator spec {spec:?}; expected count=K or weights=w1,w2,..."));
    match spec.split_once('=') {
        Some(("count", k)) => Ok(vec![1; k.trim().parse::<usize>().map_err(|_| bad())?]),
        Some(("weights", list)) if list.trim().is_empty() => Ok(Vec::new()),
        Some(("weights", list)) => list.split(',').map(|w| w.trim().parse::<u64>().map_err(|_| bad())).collect(),
        _ => Err(bad()),
    }
}

fn print_plans(file: &CertificateFile) {
    for (i, m) in file.manipulators.iter().enumerate() {
        println!("manipulator {} (weight {}): {}", i + 1, m.weight, m.initial.join(" > "));
        if let Some(r) = &m.runoff {
            println!("  runoff: {}", r.join(" > "));
        }
    }
}

pub fn manipulate(args: ManipulateArgs<'_>) -> CmdResult {
    let e = load_election(args.election)?;
    let protocol = protocol_for(args.protocol, &e)?;
    let mode: Mode = args.mode.parse().map_err(semantic_error)?;
    let weights = parse_manipulators(args.manipulators)?;
    let strategy: Strategy = args.strategy.parse().map_err(semantic_error)?;
    let target = e.id_of(args.target).ok_or_else(|| semantic_error(format!("unknown target {:?}", args.target)))?;
    let inst = ManipulationInstance::new(e, protocol, weights, target, mode).map_err(semantic_error)?;
    let mut config = if args.sequential { SolverConfig::sequential() } else { SolverConfig::default() };
    if let Some(b) = args.budget {
        config.budget = b;
    }
    let sem = semantics(args.nw_semantics);
    let result = solve(&inst, sem, strategy, &config).map_err(semantic_error)?;
    eprintln!("solver: {}, nodes explored: {}", result.solver, result.nodes_explored);
    match result.verdict {
        Verdict::Yes => {
            let cert = result.certificate.as_ref().expect("yes carries a certificate");
            let file = CertificateFile::from_certificate(&inst, cert);
            let text = file.to_json();
            // Re-verify exactly what gets written.
            let reread = CertificateFile::parse(&text)
                .and_then(|f| f.certificate(&inst.election))
                .map_err(|e| Failure { code: 3, message: format!("internal error: {e}") })?;
            if verify_certificate(&inst, &reread, sem) != Ok(true) {
                return Err(Failure { code: 3, message: "internal error: certificate failed re-verification".into() });
            }
            println!("YES");
            print_plans(&file);
            if let Some(path) = args.certificate {
                write(path, &text)?;
            }
            Ok(0)
        }
        Verdict::No => {
            if !result.exact {
                eprintln!("note: {} is a heuristic for this instance; NO is not conclusive", result.solver);
            }
            println!("NO");
            Ok(1)
        }
        Verdict::Unknown => {
            eprintln!("note: search budget of {} plans exhausted", config.budget);
            println!("UNKNOWN");
            Ok(4)
        }
    }
}

fn load_x3c(path: &Path) -> Result<runoff_core::reductions::X3CInstance, Failure> {
    parse_x3c(&read(path)?).map_err(|e| match e {
        X3CFileError::Json(_) => parse_error(format!("{}: {e}", path.display())),
        X3CFileError::Invalid(_) => semantic_error(format!("{}: {e}", path.display())),
    })
}

pub fn gen(path: &Path, halfapproval: bool, output: Option<&Path>, cert_out: Option<&Path>, mode: &str) -> CmdResult {
    let x3c = load_x3c(path)?;
    let mode: Mode = mode.parse().map_err(semantic_error)?;
    let (inst, name) = if halfapproval {
        (gen_halfapproval_construction(&x3c, mode).map_err(semantic_error)?.instance, "halfapproval")
    } else {
        (gen_veto_construction(&x3c, mode).map_err(semantic_error)?.instance, "veto")
    };
    let header = format!(
        "# {name} construction: k={} n={}, {} unit-weight manipulator(s), target p\n",
        x3c.k(),
        x3c.n(),
        inst.weights.len()
    );
    let text = header + &serialize_election(&inst.election);
    match output {
        Some(p) => write(p, &text)?,
        None => print!("{text}"),
    }
    if let Some(cert_path) = cert_out {
        match x3c_oracle(&x3c) {
            Some(cover) => {
                let cert = if halfapproval {
                    halfapproval_cover_certificate(&x3c, &cover)
                } else {
                    veto_cover_certificate(&x3c, &cover)
                }
                .map_err(semantic_error)?;
                write(cert_path, &CertificateFile::from_certificate(&inst, &cert).to_json())?;
            }
            None => eprintln!("note: no exact cover; certificate not written"),
        }
    }
    Ok(0)
}

pub fn oracle(path: &Path) -> CmdResult {
    let x3c = load_x3c(path)?;
    match x3c_oracle(&x3c) {
        Some(cover) => {
            let ids: Vec<String> = cover.iter().map(|j| (j + 1).to_string()).collect();
            println!("{}", ids.join(" "));
            Ok(0)
        }
        None => {
            println!("NONE");
            Ok(1)
        }
    }
}

fn malformed(reason: impl std::fmt::Display) -> CmdResult {
    eprintln!("{reason}");
    println!("MALFORMED");
    Ok(2)
}

pub fn verify(
    election: &Path,
    cert_path: &Path,
    protocol: Option<&str>,
    mode: Option<&str>,
    nw: bool,
) -> CmdResult {
    let e = load_election(election)?;
    let file = match CertificateFile::parse(&read(cert_path)?) {
        Ok(f) => f,
        Err(err) => return malformed(err),
    };
    let protocol = protocol_for(protocol.unwrap_or(&file.protocol), &e)?;
    let mode: Mode = mode.unwrap_or(&file.mode).parse().map_err(semantic_error)?;
    let target = match file.target(&e) {
        Ok(t) => t,
        Err(err) => return malformed(err),
    };
    let inst = match ManipulationInstance::new(e, protocol, file.weights(), target, mode) {
        Ok(i) => i,
        Err(err) => return malformed(err),
    };
    let cert = match file.certificate(&inst.election) {
        Ok(c) => c,
        Err(err) => return malformed(err),
    };
    match verify_certificate(&inst, &cert, semantics(nw)) {
        Ok(true) => {
            println!("VALID-SUCCESS");
            Ok(0)
        }
        Ok(false) => {
            println!("VALID-FAIL");
            Ok(1)
        }
        Err(err) => malformed(err),
    }
}

fn print_report(r: &Report) {
    println!("{}", r.summary());
    for note in &r.notes {
        println!("  note: {note}");
    }
    for f in &r.failures {
        println!("  failure: {f}");
    }
}

fn print_counterexample() {
    let inst = runoff_core::experiments::counterexample_instance(Mode::Runoff);
    let e = &inst.election;
    let tally = e.tally(&inst.protocol).expect("valid");
    let scores: Vec<String> = e.candidates().iter().map(|c| format!("{}={}", e.name(c), tally.score(c))).collect();
    println!("nonmanipulator tallies: {}", scores.join(" "));
    for order in [[0, 3, 2, 1], [0, 2, 3, 1]] {
        let ballot = Ballot::from_indices(&order);
        let plans = [runoff_core::runoff::VotePlan::initial_only(ballot.clone())];
        let out = run_two_round(e, &inst.protocol, &inst.weights, &plans, Mode::Runoff, ThenSemantics::DecisiveStop)
            .expect("well formed");
        println!(
            "{}: initial winners {}; runoff winners {}",
            e.format_ballot(&ballot),
            e.format_set(&out.initial_winners),
            e.format_set(&out.overall_winners)
        );
    }
}

pub fn repro(suite: Suite, seed: u64) -> CmdResult {
    let config = SolverConfig::default();
    let wants = |s: Suite| suite == s || suite == Suite::All;
    let mut reports = Vec::new();
    if wants(Suite::Counterexample) {
        print_counterexample();
        reports.push(counterexample_suite());
    }
    let needs_instances = wants(Suite::VetoSweep) || wants(Suite::HalfapprovalForward);
    let instances = if needs_instances { desk_scale_x3c() } else { Vec::new() };
    if wants(Suite::VetoSweep) {
        let sweep = veto_sweep(&instances, &config);
        reports.push(sweep.equivalence);
        reports.push(sweep.forward);
    }
    if wants(Suite::HalfapprovalForward) {
        reports.push(halfapproval_forward(&instances, &config));
    }
    if wants(Suite::Plurality) {
        reports.push(plurality_suite(seed, 200, &config));
    }
    if wants(Suite::Bucket) {
        reports.push(bucket_suite(seed, 200, &config));
    }
    if wants(Suite::Greedy) {
        reports.push(greedy_suite(seed, 500, &config));
    }
    if wants(Suite::Semantics) {
        reports.push(semantics_suite(seed, 500));
    }
    reports.iter().for_each(print_report);
    Ok(if reports.iter().all(Report::passed) { 0 } else { 1 })
}
