use thiserror::Error;

/// Errors raised by the discrete calculus.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid cover profile: {0}")]
    InvalidProfile(String),
    #[error("unknown orbit `{0}`")]
    UnknownOrbit(String),
    #[error("degree {numerator} is not divisible by the cover order {n}")]
    NonIntegralDegree { numerator: i64, n: i64 },
    #[error("invalid equivariant datum: {0}")]
    InvalidData(String),
    #[error("invalid parabolic datum: {0}")]
    InvalidDatum(String),
    #[error("no d2 solves the determinant congruence at orbit `{0}`")]
    NoSolution(String),
    #[error("operation needs an even cover order, got n = {0}")]
    OddOrder(i64),
    #[error("invalid parabolic bundle: {0}")]
    InvalidBundle(String),
    #[error("graded object requested for a verdict that is not strictly semistable")]
    NotSemistableNotStrict,
    #[error("hyperelliptic report needs g >= 1, got {0}")]
    InvalidGenus(i64),
    #[error("inconsistent degrees: {0}")]
    InconsistentDegrees(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
