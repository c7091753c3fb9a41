use std::fmt;

use num_bigint::BigInt;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("vertex index {index} out of range for a digraph on {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("duplicate vertex label {0:?}")]
    DuplicateLabel(String),
    #[error("expected {expected} labels, got {got}")]
    LabelCountMismatch { expected: usize, got: usize },
    #[error("order {order} exceeds the configured limit of {limit} vertices")]
    ResourceLimit { order: usize, limit: usize },
    #[error("digraph has a directed cycle or a loop")]
    NotAcyclic,
    #[error("digraph has no vertices")]
    EmptyDigraph,
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("partition is not regular: vertex {vertex} has the wrong number of arcs into class {class}")]
    NotRegular { vertex: usize, class: usize },
    #[error("classes do not partition the vertex set: {0}")]
    InvalidPartition(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("need at least {needed} terms, got {got}")]
    InsufficientTerms { needed: usize, got: usize },
    #[error("no linear recurrence of order at most {max_order} fits the terms")]
    NoRecurrenceFound { max_order: usize },
    #[error("enumerating {alphabet}^{length} words exceeds the cap of {cap}")]
    EnumerationCapExceeded {
        alphabet: usize,
        length: usize,
        cap: u64,
    },
    #[error("methods disagree at k = {k}: {values}")]
    MethodDisagreement { k: usize, values: Disagreement },
    #[error("invalid forbidden word {word:?}: {reason}")]
    InvalidWord { word: String, reason: String },
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Oeis(#[from] crate::oeis::OeisError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// The conflicting values reported by each method at one index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disagreement(pub Vec<(&'static str, BigInt)>);

impl fmt::Display for Disagreement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (method, value)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{method}={value}")?;
        }
        Ok(())
    }
}
