use thiserror::Error;

/// Errors produced by the operad engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input")]
    Empty,
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("invalid label `{0}`")]
    InvalidLabel(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("label `{0}` is not present")]
    MissingLabel(String),
    #[error("label `{0}` occurs on both sides of a composition")]
    LabelClash(String),
    #[error("label `{0}` must occur in exactly one block of every wedge term")]
    AmbiguousPosition(String),
    #[error("arity {got} is below the minimum {min}")]
    ArityTooSmall { got: usize, min: usize },
    #[error("tree `{0}` does not have root-valence 1")]
    NotRootValenceOne(String),
    #[error("inputs are not homogeneous in a single label set")]
    Inhomogeneous,
    #[error("series has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("series orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("fixed-point iteration did not converge within {0} steps")]
    NoConvergence(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
