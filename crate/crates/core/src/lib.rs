//! Coalition manipulation of same-system runoff elections under scoring
//! protocols.
//!
//! An election is held under a scoring protocol; if several candidates tie
//! for the top score, a second election among just those winners decides
//! ("X then X"). In a [`runoff::Mode::RevotingRunoff`] the manipulators may
//! also recast their runoff ballots. The crate evaluates such elections,
//! decides whether a coalition of manipulators can make a target candidate
//! win (returning a two-round certificate when it can), and builds the
//! exact-cover reductions that make the problem hard for Veto.
//!
//! ```
//! use runoff_core::prelude::*;
//!
//! let e = runoff_core::format::parse_election(
//!     "candidates: p a b c\nvote: a > p > c > b\nvote: b > a > c > p\n",
//! ).unwrap();
//! let protocol: ScoringProtocol = "vector:2,1,0,0".parse().unwrap();
//! let inst = ManipulationInstance::unweighted(e, protocol, 1, CandidateId(0), Mode::Runoff).unwrap();
//! let r = solve(&inst, ThenSemantics::DecisiveStop, Strategy::Auto, &SolverConfig::default()).unwrap();
//! assert!(r.manipulable());
//! ```

pub mod election;
pub mod experiments;
pub mod format;
pub mod instance;
pub mod protocol;
pub mod reductions;
pub mod runoff;
pub mod solvers;

pub mod prelude {
    pub use crate::election::{Ballot, CandidateId, CandidateSet, Election, WeightedVote};
    pub use crate::instance::ManipulationInstance;
    pub use crate::protocol::ScoringProtocol;
    pub use crate::runoff::{run_two_round, verify_certificate, Certificate, Mode, ThenSemantics, VotePlan};
    pub use crate::solvers::{solve, SolveResult, SolverConfig, Strategy, Verdict};
}
