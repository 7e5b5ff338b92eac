use thiserror::Error;

/// Errors produced by the computation layers and the identity harness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("series has zero constant term and no reciprocal")]
    ZeroConstantTerm,

    #[error("coefficient {index} is {value}, not an integer")]
    NotAnInteger { index: usize, value: String },

    #[error("coefficient index {index} exceeds truncation order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("no truncation point up to {cap} satisfies the tail criterion")]
    CertificationFailure { cap: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("n = {n} exceeds the enumeration limit of {limit}")]
    SizeLimit { n: usize, limit: usize },

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("identity `{id}` has no parameter `{param}`")]
    UnknownParameter { id: String, param: String },

    #[error("identity `{0}` computes both sides with the same method")]
    SelfReferential(String),

    #[error("malformed multi-index `{0}`")]
    MalformedIndex(String),
}

pub type Result<T> = std::result::Result<T, Error>;
