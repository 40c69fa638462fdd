//! Exact cover by 3-sets and its reductions to runoff manipulation.

mod halfapproval;
mod veto;
mod x3c;

pub use halfapproval::{
    gen_halfapproval_construction, halfapproval_cover_certificate, HalfApprovalConstruction, HalfApprovalLayout,
};
pub use veto::{gen_veto_construction, veto_cover_certificate, VetoConstruction, VetoLayout};
pub use x3c::{x3c_oracle, X3CError, X3CInstance};

use crate::election::restrict_ballot;
use crate::instance::ManipulationInstance;
use crate::runoff::{run_two_round, Certificate, Mode, ThenSemantics, VotePlan};

/// Fills in each runoff ballot as the restriction of the initial ballot to
/// the realized runoff field; leaves them absent when no runoff is held.
fn attach_restrictions(inst: &ManipulationInstance, mut plans: Vec<VotePlan>) -> Certificate {
    let outcome = run_two_round(
        &inst.election,
        &inst.protocol,
        &inst.weights,
        &plans,
        Mode::Runoff,
        ThenSemantics::DecisiveStop,
    )
    .expect("generated plans are well formed");
    if outcome.runoff_held {
        for plan in &mut plans {
            plan.runoff = Some(restrict_ballot(&plan.initial, &outcome.initial_winners).expect("nonempty field"));
        }
    }
    Certificate::new(plans)
}
