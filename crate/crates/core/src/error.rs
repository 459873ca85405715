use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different carriers")]
    MixedCarriers,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("not a subgroup of the enclosing subgroup")]
    NotASubgroup,
    #[error("subgroup has infinite index")]
    InfiniteIndex,
    #[error("unbound symbol `{0}`")]
    UnboundSymbol(String),
    #[error("the set is empty")]
    EmptySet,
    #[error("subgroup is not part of the generating family")]
    SubgroupNotInFamily,
    #[error("subgroup is strictly contained in another family member")]
    NotTopLevel,
    #[error("cannot decompose the empty set")]
    EmptyInput,
    #[error("not a graph: {0}")]
    NotAGraph(String),
    #[error("unsupported carrier: {0}")]
    UnsupportedCarrier(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
