use thiserror::Error;

use crate::election::{CandidateId, Election};
use crate::protocol::{ProtocolError, ScoringProtocol};
use crate::runoff::Mode;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("distinguished candidate {0} is not in the election")]
    UnknownTarget(CandidateId),
    #[error("manipulator {0} has weight zero")]
    ZeroWeight(usize),
    #[error(transparent)]
    Protocol(#[from] ProtocolError),
}

/// A coalitional manipulation question: can the manipulators, with the given
/// weights, vote so that `target` wins under `protocol` in `mode`?
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManipulationInstance {
    pub election: Election,
    pub protocol: ScoringProtocol,
    pub weights: Vec<u64>,
    pub target: CandidateId,
    pub mode: Mode,
}

impl ManipulationInstance {
    pub fn new(
        election: Election,
        protocol: ScoringProtocol,
        weights: Vec<u64>,
        target: CandidateId,
        mode: Mode,
    ) -> Result<Self, InstanceError> {
        if target.0 >= election.num_candidates() {
            return Err(InstanceError::UnknownTarget(target));
        }
        if let Some(i) = weights.iter().position(|&w| w == 0) {
            return Err(InstanceError::ZeroWeight(i));
        }
        protocol.score_vector(election.num_candidates())?;
        Ok(ManipulationInstance { election, protocol, weights, target, mode })
    }

    /// `count` manipulators of weight one.
    pub fn unweighted(
        election: Election,
        protocol: ScoringProtocol,
        count: usize,
        target: CandidateId,
        mode: Mode,
    ) -> Result<Self, InstanceError> {
        Self::new(election, protocol, vec![1; count], target, mode)
    }

    pub fn with_mode(&self, mode: Mode) -> Self {
        ManipulationInstance { mode, ..self.clone() }
    }

    pub fn num_candidates(&self) -> usize {
        self.election.num_candidates()
    }

    /// True if every manipulator has the same weight (vacuously for none).
    pub fn is_uniform(&self) -> bool {
        self.weights.windows(2).all(|w| w[0] == w[1])
    }
}
