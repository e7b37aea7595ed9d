use thiserror::Error;

/// Domain errors raised by the library. Parse failures have their own type in
/// [`crate::format`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("space mismatch: {left} vs {right}")]
    SpaceMismatch { left: String, right: String },
    #[error("dimension {dim} out of range for n={n}")]
    DimensionOutOfRange { dim: usize, n: usize },
    #[error("invalid brick: {0}")]
    InvalidBrick(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("bricks overlap: {0}")]
    Overlap(String),
    #[error("not a full bisection: {0}")]
    NotFull(String),
    #[error("empty clopen: {0}")]
    EmptyClopen(&'static str),
    #[error("H0 class mismatch: {left} != {right} mod {modulus}")]
    ClassMismatch { left: u64, right: u64, modulus: u64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("not determined: {0}")]
    NotDetermined(String),
}

pub type Result<T> = std::result::Result<T, Error>;
