use thiserror::Error;

/// Errors produced by the graph engine and the text format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),

    #[error("duplicate bundle label `{0}`")]
    DuplicateLabel(String),

    #[error("bundle multiplicity must be at least 1")]
    ZeroMultiplicity,

    #[error("graph has {vertices} vertices; the limit for this operation is {limit}")]
    SizeLimitExceeded { vertices: usize, limit: usize },

    #[error("invalid boundary path: {0}")]
    InvalidPath(String),

    #[error("vertex set {0} does not satisfy MT1-MT4")]
    NotAMaximalTail(String),

    #[error("vertex set {0} is not saturated hereditary")]
    NotSaturatedHereditary(String),

    #[error("({h}, {s}) is not an admissible pair")]
    NotAdmissible { h: String, s: String },

    #[error("Condition (K) required; vertex `{0}` is the source of exactly one simple cycle")]
    ConditionKRequired(String),

    #[error("verification failed: {0}")]
    VerificationFailure(String),

    #[error(transparent)]
    Parse(#[from] crate::format::ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
