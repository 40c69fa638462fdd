//! Text and JSON file formats for elections, X3C instances and certificates.

mod certificate_file;
mod election_file;
mod x3c_file;

pub use certificate_file::{CertificateFile, CertificateFileError, PlanEntry};
pub use election_file::{parse_election, serialize_election, ParseError};
pub use x3c_file::{parse_x3c, serialize_x3c, X3CFileError};
