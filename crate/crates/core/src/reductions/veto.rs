//! X3C to Veto manipulation with runoffs.
//!
//! Candidates (in id order): `p`, `b1..b3k`, `s1..sn`, `r1..rk`, `d`, `l`.
//! Every candidate but `l` starts with exactly three nonmanipulator vetoes;
//! `l` has `n + 1`. The `k` manipulators can make `p` an overall winner iff
//! the triples admit an exact cover: eliminating `s_j` for the cover sets in
//! the initial round shifts one veto onto each `b` in the runoff.

use crate::election::{Ballot, CandidateId, Election, WeightedVote};
use crate::instance::ManipulationInstance;
use crate::protocol::ScoringProtocol;
use crate::runoff::{Certificate, Mode, VotePlan};

use super::{attach_restrictions, X3CError, X3CInstance};

/// Candidate ids of a generated Veto election.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VetoLayout {
    pub p: CandidateId,
    pub b: Vec<CandidateId>,
    pub s: Vec<CandidateId>,
    pub r: Vec<CandidateId>,
    pub d: CandidateId,
    pub ell: CandidateId,
}

impl VetoLayout {
    fn new(k: usize, n: usize) -> Self {
        let mut next = 0;
        let mut take = |count: usize| {
            let ids: Vec<CandidateId> = (next..next + count).map(CandidateId).collect();
            next += count;
            ids
        };
        let p = take(1)[0];
        let b = take(3 * k);
        let s = take(n);
        let r = take(k);
        let d = take(1)[0];
        let ell = take(1)[0];
        VetoLayout { p, b, s, r, d, ell }
    }

    pub fn num_candidates(&self) -> usize {
        self.ell.0 + 1
    }

    pub fn names(&self) -> Vec<String> {
        let mut names = vec!["p".to_string()];
        names.extend((1..=self.b.len()).map(|i| format!("b{i}")));
        names.extend((1..=self.s.len()).map(|i| format!("s{i}")));
        names.extend((1..=self.r.len()).map(|i| format!("r{i}")));
        names.push("d".into());
        names.push("l".into());
        names
    }
}

#[derive(Clone, Debug)]
pub struct VetoConstruction {
    pub instance: ManipulationInstance,
    pub layout: VetoLayout,
}

/// Nonmanipulator votes shared with the HalfApproval padding: the seven
/// groups listed in the module docs over an `m`-candidate field. Every `r`
/// in `layout` gets its three dedicated vetoes.
pub(crate) fn veto_core_votes(x3c: &X3CInstance, m: usize, layout: &VetoLayout) -> Vec<WeightedVote> {
    let VetoLayout { p, ref b, ref s, ref r, d, ell } = *layout;
    let vote = |suffix: &[CandidateId], count: u64| WeightedVote::new(Ballot::with_suffix(m, suffix), 1, count);
    let mut votes = Vec::new();
    for j in 0..3 {
        for (i, set) in x3c.sets().iter().enumerate() {
            votes.push(vote(&[p, b[set[j] - 1], s[i]], 1));
        }
    }
    votes.push(vote(&[p], 3));
    for &c in b.iter().chain(r).chain(std::iter::once(&d)) {
        votes.push(vote(&[p, c], 3));
    }
    votes.push(vote(&[p, ell], 1));
    for &si in s {
        votes.push(vote(&[p, d, si, ell], 1));
    }
    votes
}

/// Builds the Veto election for `x3c` with `k` unit-weight manipulators.
pub fn gen_veto_construction(x3c: &X3CInstance, mode: Mode) -> Result<VetoConstruction, X3CError> {
    if x3c.n() < 3 {
        return Err(X3CError::TooFewSets(x3c.n()));
    }
    let layout = VetoLayout::new(x3c.k(), x3c.n());
    let m = layout.num_candidates();
    let votes = veto_core_votes(x3c, m, &layout);
    let election = Election::new(layout.names(), votes).expect("generated ballots are permutations");
    let instance = ManipulationInstance::unweighted(election, ScoringProtocol::Veto, x3c.k(), layout.p, mode)
        .expect("generated instance is well formed");
    Ok(VetoConstruction { instance, layout })
}

/// The cover plan: manipulator `i` votes `⋯ > r_i > s_{j_i}` where `j_i` is
/// the `i`-th cover set in ascending order. Runoff ballots are the
/// restrictions to the realized runoff field.
pub fn veto_cover_certificate(x3c: &X3CInstance, cover: &[usize]) -> Result<Certificate, X3CError> {
    if !x3c.is_exact_cover(cover) {
        return Err(X3CError::NotACover);
    }
    let built = gen_veto_construction(x3c, Mode::Runoff)?;
    let layout = &built.layout;
    let m = layout.num_candidates();
    let mut cover = cover.to_vec();
    cover.sort_unstable();
    let plans = cover
        .iter()
        .enumerate()
        .map(|(i, &j)| VotePlan::initial_only(Ballot::with_suffix(m, &[layout.r[i], layout.s[j]])))
        .collect();
    Ok(attach_restrictions(&built.instance, plans))
}
