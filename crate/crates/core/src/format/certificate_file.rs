//! ```json
//! {"mode": "runoff", "protocol": "vector:2,1,0,0", "target": "p",
//!  "manipulators": [{"weight": 1, "initial": ["p", "b", "c", "a"], "runoff": null}]}
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::election::{Ballot, CandidateId, Election};
use crate::instance::ManipulationInstance;
use crate::protocol::ScoringProtocol;
use crate::runoff::{Certificate, Mode, VotePlan};

use super::election_file::parse_names;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanEntry {
    pub weight: u64,
    pub initial: Vec<String>,
    pub runoff: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub mode: String,
    pub protocol: String,
    pub target: String,
    pub manipulators: Vec<PlanEntry>,
}

#[derive(Debug, Error)]
pub enum CertificateFileError {
    #[error("malformed certificate file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("certificate names unknown candidate {0:?}")]
    UnknownCandidate(String),
    #[error("bad field in certificate: {0}")]
    Field(String),
}

impl CertificateFile {
    pub fn from_certificate(inst: &ManipulationInstance, cert: &Certificate) -> Self {
        let e = &inst.election;
        let names = |b: &Ballot| b.order().iter().map(|&c| e.name(c).to_string()).collect();
        CertificateFile {
            mode: inst.mode.to_string(),
            protocol: inst.protocol.to_string(),
            target: e.name(inst.target).to_string(),
            manipulators: cert
                .plans
                .iter()
                .zip(&inst.weights)
                .map(|(plan, &weight)| PlanEntry {
                    weight,
                    initial: names(&plan.initial),
                    runoff: plan.runoff.as_ref().map(names),
                })
                .collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, CertificateFileError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data") + "\n"
    }

    pub fn mode(&self) -> Result<Mode, CertificateFileError> {
        self.mode.parse().map_err(CertificateFileError::Field)
    }

    pub fn protocol(&self) -> Result<ScoringProtocol, CertificateFileError> {
        self.protocol.parse().map_err(|e| CertificateFileError::Field(format!("{e}")))
    }

    pub fn target(&self, e: &Election) -> Result<CandidateId, CertificateFileError> {
        e.id_of(&self.target).ok_or_else(|| CertificateFileError::UnknownCandidate(self.target.clone()))
    }

    pub fn weights(&self) -> Vec<u64> {
        self.manipulators.iter().map(|m| m.weight).collect()
    }

    /// Resolves names against `e`. Ballots are not checked for being
    /// permutations here; that is the verifier's job.
    pub fn certificate(&self, e: &Election) -> Result<Certificate, CertificateFileError> {
        let ballot = |names: &[String]| {
            parse_names(e, names).ok_or_else(|| {
                let unknown = names.iter().find(|n| e.id_of(n).is_none()).cloned().unwrap_or_default();
                CertificateFileError::UnknownCandidate(unknown)
            })
        };
        let plans = self
            .manipulators
            .iter()
            .map(|m| {
                Ok(VotePlan {
                    initial: ballot(&m.initial)?,
                    runoff: m.runoff.as_deref().map(ballot).transpose()?,
                })
            })
            .collect::<Result<_, CertificateFileError>>()?;
        Ok(Certificate::new(plans))
    }
}
