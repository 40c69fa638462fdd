use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::reductions::{X3CError, X3CInstance};

#[derive(Serialize, Deserialize)]
struct X3CDoc {
    k: usize,
    sets: Vec<[usize; 3]>,
}

#[derive(Debug, Error)]
pub enum X3CFileError {
    #[error("malformed X3C file: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] X3CError),
}

/// Reads `{"k": 2, "sets": [[1, 2, 3], ...]}` with 1-based elements.
pub fn parse_x3c(text: &str) -> Result<X3CInstance, X3CFileError> {
    let doc: X3CDoc = serde_json::from_str(text)?;
    Ok(X3CInstance::new(doc.k, doc.sets)?)
}

pub fn serialize_x3c(inst: &X3CInstance) -> String {
    let doc = X3CDoc { k: inst.k(), sets: inst.sets().to_vec() };
    serde_json::to_string(&doc).expect("plain data") + "\n"
}
