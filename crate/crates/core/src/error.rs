use thiserror::Error;

/// Errors raised by the verification routines.
///
/// Most variants signal that a claimed identity failed to hold, which is a
/// finding rather than a programming error; callers usually turn them into
/// failed report rows.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degree k = {0} must be even and positive")]
    OddDegree(u32),

    #[error("element is not in the group G")]
    NotInGroup,

    #[error("symplectic lift is not integral for element {0}")]
    NonIntegralLift(usize),

    #[error("relation failed: {0}")]
    RelationFailed(String),

    #[error("check failed: {0}")]
    CheckFailed(String),

    #[error("inconsistent data: {0}")]
    Inconsistent(String),

    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),

    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

pub type Result<T> = std::result::Result<T, Error>;
