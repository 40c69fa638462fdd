//! Decision procedures for constructive coalitional manipulation in the
//! single-round, runoff and revoting-runoff settings.
//!
//! Every solver that answers YES returns a [`Certificate`], and [`solve`]
//! re-verifies it with the reference evaluator before returning.

mod bucket;
pub mod enumerate;
mod exhaustive;
mod greedy;
mod par;
mod plurality;
mod space;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::instance::ManipulationInstance;
use crate::protocol::ScoringProtocol;
use crate::runoff::{verify_certificate, Certificate, Mode, RunoffError, ThenSemantics};

pub use bucket::solve_bucket;
pub use exhaustive::solve_exhaustive;
pub use greedy::{greedy_ballot, greedy_is_exact, greedy_single, solve_greedy, solve_single_round};
pub use par::map_ordered;
pub use plurality::solve_plurality_weighted;

/// Default cap on evaluated plans per search.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug)]
pub struct SolverConfig {
    /// Maximum number of plan evaluations before answering `Unknown`.
    pub budget: u64,
    /// Search independent branches on the rayon pool. Ignored without the
    /// `parallel` feature.
    pub parallel: bool,
    /// Search Veto instances over veto choices rather than full ballots.
    pub canonicalize: bool,
    /// Largest candidate count the bucket solver accepts.
    pub bucket_max_candidates: usize,
    /// Largest candidate count for which `Auto` picks the bucket solver.
    pub auto_bucket_max_candidates: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            budget: DEFAULT_BUDGET,
            parallel: cfg!(feature = "parallel"),
            canonicalize: true,
            bucket_max_candidates: 5,
            auto_bucket_max_candidates: 3,
        }
    }
}

impl SolverConfig {
    pub fn sequential() -> Self {
        SolverConfig { parallel: false, ..Self::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    /// The search budget ran out before a decision.
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolverKind {
    Greedy,
    GreedyThenExhaustive,
    Exhaustive,
    ExhaustiveVeto,
    Bucket,
    FastPath,
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolverKind::Greedy => "greedy",
            SolverKind::GreedyThenExhaustive => "greedy+exhaustive",
            SolverKind::Exhaustive => "exhaustive",
            SolverKind::ExhaustiveVeto => "exhaustive(veto-canonical)",
            SolverKind::Bucket => "bucket",
            SolverKind::FastPath => "fastpath",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub verdict: Verdict,
    pub certificate: Option<Certificate>,
    pub solver: SolverKind,
    pub nodes_explored: u64,
    /// False when a `No` may be a false negative (greedy outside its
    /// exactness range).
    pub exact: bool,
}

impl SolveResult {
    pub fn manipulable(&self) -> bool {
        self.verdict == Verdict::Yes
    }

    pub(crate) fn found(certificate: Certificate, solver: SolverKind, nodes: u64) -> Self {
        SolveResult { verdict: Verdict::Yes, certificate: Some(certificate), solver, nodes_explored: nodes, exact: true }
    }

    pub(crate) fn not_found(solver: SolverKind, nodes: u64) -> Self {
        SolveResult { verdict: Verdict::No, certificate: None, solver, nodes_explored: nodes, exact: true }
    }

    pub(crate) fn unknown(solver: SolverKind, nodes: u64) -> Self {
        SolveResult { verdict: Verdict::Unknown, certificate: None, solver, nodes_explored: nodes, exact: false }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    #[default]
    Auto,
    Greedy,
    Exhaustive,
    Bucket,
    FastPath,
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Strategy::Auto),
            "greedy" => Ok(Strategy::Greedy),
            "exhaustive" => Ok(Strategy::Exhaustive),
            "bucket" => Ok(Strategy::Bucket),
            "fastpath" => Ok(Strategy::FastPath),
            _ => Err(format!("unknown strategy {s:?}")),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("strategy not applicable: {0}")]
    NotApplicable(&'static str),
    #[error("{m} candidates exceeds the bucket solver bound of {bound}")]
    TooManyCandidates { m: usize, bound: usize },
    #[error("expected exactly one manipulator, found {0}")]
    ManipulatorCount(usize),
    #[error("solver requires mode {expected}, instance has {found}")]
    WrongMode { expected: Mode, found: Mode },
    #[error("internal error: solver produced an invalid certificate: {0}")]
    Unsound(String),
}

/// Which solver `Auto` would run on this instance.
pub fn auto_strategy(instance: &ManipulationInstance, config: &SolverConfig) -> Strategy {
    if instance.protocol == ScoringProtocol::Plurality {
        Strategy::FastPath
    } else if instance.mode == Mode::Single && instance.weights.len() <= 1 {
        Strategy::Greedy
    } else if instance.is_uniform() && instance.num_candidates() <= config.auto_bucket_max_candidates {
        Strategy::Bucket
    } else {
        Strategy::Exhaustive
    }
}

/// Runs the requested strategy and re-verifies any certificate it returns.
pub fn solve(
    instance: &ManipulationInstance,
    semantics: ThenSemantics,
    strategy: Strategy,
    config: &SolverConfig,
) -> Result<SolveResult, SolveError> {
    let strategy = match strategy {
        Strategy::Auto => auto_strategy(instance, config),
        s => s,
    };
    let result = match strategy {
        Strategy::Greedy if instance.mode == Mode::Single => solve_single_round(instance, config)?,
        Strategy::Greedy => solve_greedy(instance, semantics),
        Strategy::Exhaustive => solve_exhaustive(instance, semantics, config),
        Strategy::Bucket => solve_bucket(instance, semantics, config)?,
        Strategy::FastPath => solve_plurality_weighted(instance, semantics)?,
        Strategy::Auto => unreachable!(),
    };
    check_sound(instance, semantics, &result)?;
    Ok(result)
}

pub(crate) fn check_sound(
    instance: &ManipulationInstance,
    semantics: ThenSemantics,
    result: &SolveResult,
) -> Result<(), SolveError> {
    if !result.manipulable() {
        return Ok(());
    }
    let cert = result.certificate.as_ref().ok_or_else(|| SolveError::Unsound("missing certificate".into()))?;
    match verify_certificate(instance, cert, semantics) {
        Ok(true) => Ok(()),
        Ok(false) => Err(SolveError::Unsound("certificate does not make the target win".into())),
        Err(e) => Err(SolveError::Unsound(RunoffError::to_string(&e))),
    }
}
