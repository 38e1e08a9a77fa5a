use alloc::string::String;

use crate::jordan::AlgebraKind;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("partition {partition} is not admissible for {kind}: {reason}")]
    Inadmissible {
        kind: AlgebraKind,
        partition: String,
        reason: String,
    },
    #[error("expected a {expected} model, got {found}")]
    WrongKind {
        expected: &'static str,
        found: AlgebraKind,
    },
    #[error("matrix does not commute with the nilpotent element")]
    NotInCentralizer,
    #[error("subspace is not closed under the bracket: {0}")]
    NotClosed(String),
    #[error("decomposition is not compatible with the bracket: {0}")]
    IncompatibleDecomposition(String),
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("index constraint violated: {0}")]
    IndexConstraint(String),
    #[error("orthogonal case mismatch: {0}")]
    CaseMismatch(String),
    #[error("model invariant violated: {0}")]
    ModelInvariant(String),
}
