//! Scoring-protocol families.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProtocolError {
    #[error("scoring protocols need at least one candidate")]
    ZeroCandidates,
    #[error("explicit score vector is empty")]
    EmptyVector,
    #[error("explicit score vector is not nonincreasing")]
    NotNonincreasing,
    #[error("explicit score vector of length {len} cannot score {m} candidates")]
    VectorTooShort { len: usize, m: usize },
    #[error("unknown protocol {0:?}")]
    Unknown(String),
}

/// A rule assigning a nonincreasing score vector to each candidate count.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ScoringProtocol {
    /// `(1, 0, ..., 0)`
    Plurality,
    /// `(1, ..., 1, 0)`
    Veto,
    /// `(m-1, m-2, ..., 0)`
    Borda,
    /// `ceil(m/2)` ones followed by zeros.
    HalfApproval,
    /// All zeros.
    Triviality,
    /// A vector given for a fixed candidate count. Smaller counts use its
    /// prefix; larger counts are undefined.
    Explicit(Vec<u64>),
}

impl ScoringProtocol {
    /// Builds an explicit vector protocol, checking it is nonempty and
    /// nonincreasing.
    pub fn explicit(vector: Vec<u64>) -> Result<Self, ProtocolError> {
        check_vector(&vector)?;
        Ok(ScoringProtocol::Explicit(vector))
    }

    /// The `(2, 1, 0, ..., 0)` protocol at `m` candidates.
    pub fn two_one_zero(m: usize) -> Self {
        let mut v = vec![0; m.max(1)];
        v[0] = 2;
        if m > 1 {
            v[1] = 1;
        }
        ScoringProtocol::Explicit(v)
    }

    pub fn score_vector(&self, m: usize) -> Result<Vec<u64>, ProtocolError> {
        if m == 0 {
            return Err(ProtocolError::ZeroCandidates);
        }
        let m64 = m as u64;
        Ok(match self {
            ScoringProtocol::Plurality => (0..m).map(|i| u64::from(i == 0)).collect(),
            ScoringProtocol::Veto => (0..m).map(|i| u64::from(i + 1 < m)).collect(),
            ScoringProtocol::Borda => (0..m64).map(|i| m64 - 1 - i).collect(),
            ScoringProtocol::HalfApproval => (0..m).map(|i| u64::from(i < m.div_ceil(2))).collect(),
            ScoringProtocol::Triviality => vec![0; m],
            ScoringProtocol::Explicit(v) => {
                check_vector(v)?;
                if m > v.len() {
                    return Err(ProtocolError::VectorTooShort { len: v.len(), m });
                }
                v[..m].to_vec()
            }
        })
    }

    /// Largest candidate count the protocol is defined for, if bounded.
    pub fn max_candidates(&self) -> Option<usize> {
        match self {
            ScoringProtocol::Explicit(v) => Some(v.len()),
            _ => None,
        }
    }
}

fn check_vector(v: &[u64]) -> Result<(), ProtocolError> {
    if v.is_empty() {
        return Err(ProtocolError::EmptyVector);
    }
    if v.windows(2).any(|w| w[0] < w[1]) {
        return Err(ProtocolError::NotNonincreasing);
    }
    Ok(())
}

impl fmt::Display for ScoringProtocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScoringProtocol::Plurality => f.write_str("plurality"),
            ScoringProtocol::Veto => f.write_str("veto"),
            ScoringProtocol::Borda => f.write_str("borda"),
            ScoringProtocol::HalfApproval => f.write_str("halfapproval"),
            ScoringProtocol::Triviality => f.write_str("triviality"),
            ScoringProtocol::Explicit(v) => {
                let parts: Vec<String> = v.iter().map(u64::to_string).collect();
                write!(f, "vector:{}", parts.join(","))
            }
        }
    }
}

impl FromStr for ScoringProtocol {
    type Err = ProtocolError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plurality" => Ok(ScoringProtocol::Plurality),
            "veto" => Ok(ScoringProtocol::Veto),
            "borda" => Ok(ScoringProtocol::Borda),
            "halfapproval" => Ok(ScoringProtocol::HalfApproval),
            "triviality" => Ok(ScoringProtocol::Triviality),
            _ => {
                let Some(list) = s.strip_prefix("vector:") else {
                    return Err(ProtocolError::Unknown(s.to_string()));
                };
                let vector = list
                    .split(',')
                    .map(|x| x.trim().parse::<u64>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| ProtocolError::Unknown(s.to_string()))?;
                ScoringProtocol::explicit(vector)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn named_vectors() {
        assert_eq!(ScoringProtocol::Veto.score_vector(4).unwrap(), vec![1, 1, 1, 0]);
        assert_eq!(ScoringProtocol::HalfApproval.score_vector(5).unwrap(), vec![1, 1, 1, 0, 0]);
        assert_eq!(ScoringProtocol::HalfApproval.score_vector(4).unwrap(), vec![1, 1, 0, 0]);
        assert_eq!(ScoringProtocol::Triviality.score_vector(3).unwrap(), vec![0, 0, 0]);
        assert_eq!(ScoringProtocol::Plurality.score_vector(3).unwrap(), vec![1, 0, 0]);
        assert_eq!(ScoringProtocol::Borda.score_vector(4).unwrap(), vec![3, 2, 1, 0]);
        assert_eq!(ScoringProtocol::Veto.score_vector(1).unwrap(), vec![0]);
    }

    #[test]
    fn explicit_family_uses_prefixes() {
        let p = ScoringProtocol::explicit(vec![2, 1, 0, 0]).unwrap();
        assert_eq!(p.score_vector(4).unwrap(), vec![2, 1, 0, 0]);
        assert_eq!(p.score_vector(2).unwrap(), vec![2, 1]);
        assert_eq!(p.score_vector(1).unwrap(), vec![2]);
        assert_eq!(p.score_vector(5), Err(ProtocolError::VectorTooShort { len: 4, m: 5 }));
        assert_eq!(ScoringProtocol::two_one_zero(4), p);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(ScoringProtocol::Plurality.score_vector(0), Err(ProtocolError::ZeroCandidates));
        assert_eq!(ScoringProtocol::explicit(vec![]), Err(ProtocolError::EmptyVector));
        assert_eq!(ScoringProtocol::explicit(vec![0, 1]), Err(ProtocolError::NotNonincreasing));
        assert!("approval".parse::<ScoringProtocol>().is_err());
        assert!("vector:1,x".parse::<ScoringProtocol>().is_err());
        assert!("vector:0,1".parse::<ScoringProtocol>().is_err());
    }

    #[test]
    fn tags_round_trip() {
        for tag in ["plurality", "veto", "borda", "halfapproval", "triviality", "vector:2,1,0,0"] {
            let p: ScoringProtocol = tag.parse().unwrap();
            assert_eq!(p.to_string(), tag);
        }
    }

    fn any_builtin() -> impl Strategy<Value = ScoringProtocol> {
        prop_oneof![
            Just(ScoringProtocol::Plurality),
            Just(ScoringProtocol::Veto),
            Just(ScoringProtocol::Borda),
            Just(ScoringProtocol::HalfApproval),
            Just(ScoringProtocol::Triviality),
        ]
    }

    proptest! {
        #[test]
        fn vectors_are_nonincreasing_with_length_m(p in any_builtin(), m in 1usize..40) {
            let v = p.score_vector(m).unwrap();
            prop_assert_eq!(v.len(), m);
            prop_assert!(v.windows(2).all(|w| w[0] >= w[1]));
        }
    }
}
