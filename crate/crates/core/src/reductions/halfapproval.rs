//! X3C padded into one-manipulator HalfApproval with runoffs.
//!
//! Candidates (in id order): `p`, `b1..b3k`, `s1..sn`, `r1..r(k/2)`,
//! `rh1..rhR` with `R = n + 3k/2 + 3`, `d`, `l`; `2(n + 5k/2 + 3)` in all.
//! The Veto election is kept except for the dropped `r` candidates, whose
//! dedicated voters go with them. Each `rh_i` adds two `⋯ > p > rh_i` voters
//! and one `⋯ > rh_i > l` voter.

use crate::election::{Ballot, CandidateId, Election, WeightedVote};
use crate::instance::ManipulationInstance;
use crate::protocol::ScoringProtocol;
use crate::runoff::{Certificate, Mode, VotePlan};

use super::veto::{veto_core_votes, VetoLayout};
use super::{attach_restrictions, X3CError, X3CInstance};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfApprovalLayout {
    pub p: CandidateId,
    pub b: Vec<CandidateId>,
    pub s: Vec<CandidateId>,
    pub r: Vec<CandidateId>,
    pub rh: Vec<CandidateId>,
    pub d: CandidateId,
    pub ell: CandidateId,
}

impl HalfApprovalLayout {
    fn new(k: usize, n: usize) -> Self {
        let sizes = [1, 3 * k, n, k / 2, n + 3 * k / 2 + 3, 1, 1];
        let mut next = 0;
        let mut blocks = sizes.iter().map(|&count| {
            let ids: Vec<CandidateId> = (next..next + count).map(CandidateId).collect();
            next += count;
            ids
        });
        let mut block = || blocks.next().expect("seven blocks");
        let p = block()[0];
        let (b, s, r, rh) = (block(), block(), block(), block());
        let d = block()[0];
        let ell = block()[0];
        HalfApprovalLayout { p, b, s, r, rh, d, ell }
    }

    pub fn num_candidates(&self) -> usize {
        self.ell.0 + 1
    }

    pub fn names(&self) -> Vec<String> {
        let mut names = vec!["p".to_string()];
        names.extend((1..=self.b.len()).map(|i| format!("b{i}")));
        names.extend((1..=self.s.len()).map(|i| format!("s{i}")));
        names.extend((1..=self.r.len()).map(|i| format!("r{i}")));
        names.extend((1..=self.rh.len()).map(|i| format!("rh{i}")));
        names.push("d".into());
        names.push("l".into());
        names
    }
}

#[derive(Clone, Debug)]
pub struct HalfApprovalConstruction {
    pub instance: ManipulationInstance,
    pub layout: HalfApprovalLayout,
}

pub fn gen_halfapproval_construction(x3c: &X3CInstance, mode: Mode) -> Result<HalfApprovalConstruction, X3CError> {
    if x3c.k() % 2 == 1 {
        return Err(X3CError::OddK(x3c.k()));
    }
    if x3c.n() < 3 {
        return Err(X3CError::TooFewSets(x3c.n()));
    }
    let layout = HalfApprovalLayout::new(x3c.k(), x3c.n());
    let m = layout.num_candidates();
    let (p, ell) = (layout.p, layout.ell);
    let core = VetoLayout {
        p,
        b: layout.b.clone(),
        s: layout.s.clone(),
        r: layout.r.clone(),
        d: layout.d,
        ell,
    };
    let mut votes = veto_core_votes(x3c, m, &core);
    for &rh in &layout.rh {
        votes.push(WeightedVote::new(Ballot::with_suffix(m, &[p, rh]), 1, 2));
        votes.push(WeightedVote::new(Ballot::with_suffix(m, &[rh, ell]), 1, 1));
    }
    let election = Election::new(layout.names(), votes).expect("generated ballots are permutations");
    let instance = ManipulationInstance::unweighted(election, ScoringProtocol::HalfApproval, 1, p, mode)
        .expect("generated instance is well formed");
    Ok(HalfApprovalConstruction { instance, layout })
}

/// The single manipulator votes `⋯ > r_1 > ⋯ > r_(k/2) > rh_1 > ⋯ > rh_R >
/// s_(j_1) > ⋯ > s_(j_k)` with the cover in ascending order; the runoff
/// ballot, if a runoff is held, is the restriction.
pub fn halfapproval_cover_certificate(x3c: &X3CInstance, cover: &[usize]) -> Result<Certificate, X3CError> {
    let built = gen_halfapproval_construction(x3c, Mode::Runoff)?;
    if !x3c.is_exact_cover(cover) {
        return Err(X3CError::NotACover);
    }
    let layout = &built.layout;
    let mut cover = cover.to_vec();
    cover.sort_unstable();
    let mut suffix: Vec<CandidateId> = layout.r.iter().chain(&layout.rh).copied().collect();
    suffix.extend(cover.iter().map(|&j| layout.s[j]));
    let plan = VotePlan::initial_only(Ballot::with_suffix(layout.num_candidates(), &suffix));
    Ok(attach_restrictions(&built.instance, vec![plan]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::runoff::{verify_certificate, ThenSemantics};
    use crate::solvers::{solve_single_round, SolverConfig, Verdict};

    fn covered() -> X3CInstance {
        X3CInstance::new(2, vec![[1, 2, 3], [4, 5, 6], [1, 4, 5]]).unwrap()
    }

    #[test]
    fn counts_for_k2_n3() {
        let built = gen_halfapproval_construction(&covered(), Mode::Runoff).unwrap();
        assert_eq!(built.instance.num_candidates(), 22);
        assert_eq!(built.layout.rh.len(), 9);
        assert_eq!(built.layout.r.len(), 1);
        assert_eq!(built.instance.weights, vec![1]);
        // 4n + 12k + 7 veto voters, less three for the dropped r2, plus 3 per rh.
        assert_eq!(built.instance.election.total_weight(), 43 - 3 + 27);
    }

    #[test]
    fn rejects_odd_k_small_n_and_non_covers() {
        let odd = X3CInstance::new(1, vec![[1, 2, 3]; 3]).unwrap();
        assert_eq!(gen_halfapproval_construction(&odd, Mode::Runoff).unwrap_err(), X3CError::OddK(1));
        let tiny = X3CInstance::new(2, vec![[1, 2, 3], [4, 5, 6]]).unwrap();
        assert_eq!(gen_halfapproval_construction(&tiny, Mode::Runoff).unwrap_err(), X3CError::TooFewSets(2));
        assert_eq!(halfapproval_cover_certificate(&covered(), &[0, 2]), Err(X3CError::NotACover));
    }

    #[test]
    fn cover_ballot_disapproves_every_rh_and_the_cover() {
        let cert = halfapproval_cover_certificate(&covered(), &[1, 0]).unwrap();
        let built = gen_halfapproval_construction(&covered(), Mode::Runoff).unwrap();
        let layout = &built.layout;
        let ballot = &cert.plans[0].initial;
        let bottom: Vec<CandidateId> = ballot.order()[11..].to_vec();
        let mut expected = layout.rh.clone();
        expected.extend([layout.s[0], layout.s[1]]);
        assert_eq!(bottom, expected);
        assert_eq!(ballot.order()[10], layout.r[0]);
    }

    #[test]
    fn target_cannot_even_win_the_initial_round() {
        // p sits in the disapproved half of every nonmanipulator ballot except
        // the rh > l voters, so one manipulator cannot lift it to a tie.
        let built = gen_halfapproval_construction(&covered(), Mode::Single).unwrap();
        let r = solve_single_round(&built.instance, &SolverConfig::default()).unwrap();
        assert!(r.exact);
        assert_eq!(r.verdict, Verdict::No);
        let cert = halfapproval_cover_certificate(&covered(), &[0, 1]).unwrap();
        let runoff = built.instance.with_mode(Mode::Runoff);
        assert_eq!(verify_certificate(&runoff, &cert, ThenSemantics::DecisiveStop), Ok(false));
    }
}
