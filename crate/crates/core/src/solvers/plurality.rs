use crate::election::{Ballot, CandidateId};
use crate::instance::ManipulationInstance;
use crate::protocol::ScoringProtocol;
use crate::runoff::{verify_certificate, Certificate, ThenSemantics, VotePlan};

use super::{SolveError, SolveResult, SolverKind};

/// Weighted Plurality in every mode: all manipulators rank the target first
/// (others in id order) in both rounds. Any other vote lowers the target's
/// initial score without lowering a rival's, so this plan succeeds whenever
/// any plan does.
pub fn solve_plurality_weighted(inst: &ManipulationInstance, semantics: ThenSemantics) -> Result<SolveResult, SolveError> {
    if inst.protocol != ScoringProtocol::Plurality {
        return Err(SolveError::NotApplicable("the fast path only applies to Plurality"));
    }
    let m = inst.num_candidates();
    let mut order = vec![inst.target];
    order.extend((0..m).map(CandidateId).filter(|&c| c != inst.target));
    let ballot = Ballot::new(order);
    let cert = Certificate::new(inst.weights.iter().map(|_| VotePlan::initial_only(ballot.clone())).collect());
    let ok = verify_certificate(inst, &cert, semantics).expect("fast-path plans are well formed");
    Ok(if ok {
        SolveResult::found(cert, SolverKind::FastPath, 1)
    } else {
        SolveResult::not_found(SolverKind::FastPath, 1)
    })
}
