//! ```text
//! # comment
//! candidates: p a b c
//! vote: a > p > c > b
//! vote weight=2 count=3: b > a > c > p
//! ```

use thiserror::Error;

use crate::election::{Ballot, Election, ElectionError, WeightedVote};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("missing candidates line")]
    MissingCandidates,
    #[error(transparent)]
    Election(#[from] ElectionError),
}

fn at(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Line { line, message: message.into() }
}

pub fn parse_election(text: &str) -> Result<Election, ParseError> {
    let mut names: Option<Election> = None;
    let mut votes = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((head, body)) = line.split_once(':') else {
            return Err(at(line_no, "expected ':'"));
        };
        let mut head = head.split_whitespace();
        match (head.next(), &names) {
            (Some("candidates"), None) => {
                if head.next().is_some() {
                    return Err(at(line_no, "unexpected text before ':'"));
                }
                let list: Vec<String> = body.split_whitespace().map(String::from).collect();
                if list.is_empty() {
                    return Err(at(line_no, "empty candidates line"));
                }
                names = Some(Election::empty(list).map_err(|e| at(line_no, e.to_string()))?);
            }
            (Some("candidates"), Some(_)) => return Err(at(line_no, "repeated candidates line")),
            (Some("vote"), None) => return Err(at(line_no, "vote before candidates line")),
            (Some("vote"), Some(e)) => {
                let (mut weight, mut count) = (1u64, 1u64);
                for attr in head {
                    let (key, value) = attr.split_once('=').ok_or_else(|| at(line_no, format!("bad attribute {attr:?}")))?;
                    let value: u64 = value
                        .parse()
                        .ok()
                        .filter(|&v| v > 0)
                        .ok_or_else(|| at(line_no, format!("{key} must be a positive integer")))?;
                    match key {
                        "weight" => weight = value,
                        "count" => count = value,
                        _ => return Err(at(line_no, format!("unknown attribute {key:?}"))),
                    }
                }
                let ballot = e
                    .parse_ballot(body)
                    .filter(|b| b.is_permutation_of(&e.candidates()))
                    .ok_or_else(|| at(line_no, "ballot must list every candidate exactly once"))?;
                votes.push(WeightedVote::new(ballot, weight, count));
            }
            (Some(other), _) => return Err(at(line_no, format!("unknown line kind {other:?}"))),
            (None, _) => return Err(at(line_no, "empty line head")),
        }
    }
    let e = names.ok_or(ParseError::MissingCandidates)?;
    Ok(Election::new(e.names().to_vec(), votes)?)
}

pub fn serialize_election(e: &Election) -> String {
    let mut out = format!("candidates: {}\n", e.names().join(" "));
    for v in e.votes() {
        out.push_str("vote");
        if v.weight != 1 {
            out.push_str(&format!(" weight={}", v.weight));
        }
        if v.multiplicity != 1 {
            out.push_str(&format!(" count={}", v.multiplicity));
        }
        out.push_str(": ");
        out.push_str(&e.format_ballot(&v.ballot));
        out.push('\n');
    }
    out
}

/// Parses a ballot line body against an election's names.
pub(crate) fn parse_names(e: &Election, names: &[String]) -> Option<Ballot> {
    names.iter().map(|n| e.id_of(n)).collect::<Option<Vec<_>>>().map(Ballot::new)
}
