use thiserror::Error;

use crate::wilson::ScanRecord;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("modulus {0} is outside the supported range [2, 2^62)")]
    WidthExceeded(u64),

    #[error("{0}")]
    Domain(String),

    #[error("enumeration oracle refuses n = {n} (bound is n <= {bound})")]
    EnumerationBound { n: u64, bound: u64 },

    /// An applicable input whose verdict contradicts the criterion's iff.
    /// Only an implementation bug can produce this.
    #[error(
        "theory violation at n = {}, c = {}: criterion residue {} but form is {:?}",
        .0.n, .0.c, .0.criterion_residue.value(), .0.classification.kind
    )]
    TheoryViolation(Box<ScanRecord>),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
