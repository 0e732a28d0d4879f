use std::fmt;

use thiserror::Error;

/// Why a weighted cycle failed to close up into a complete fan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NotRealizableReason {
    NoClosure,
    WrongWinding,
    WrongMarkedCount,
}

impl fmt::Display for NotRealizableReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self {
            NotRealizableReason::NoClosure => "NoClosure",
            NotRealizableReason::WrongWinding => "WrongWinding",
            NotRealizableReason::WrongMarkedCount => "WrongMarkedCount",
        };
        f.write_str(tag)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("continued fraction is not evaluable (value is infinite)")]
    NotEvaluable,
    #[error("invalid continued fraction: {0}")]
    InvalidChain(String),
    #[error("invalid fraction {r}/{a}: need r > a >= 1 and gcd(r, a) = 1")]
    InvalidFraction { r: i64, a: i64 },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("lattice vector ({0}, {1}) is not primitive")]
    NonPrimitive(i64, i64),
    #[error("cone is not strictly convex and counterclockwise (det = {0})")]
    BadCone(i64),
    #[error("map is not unimodular (det = {0})")]
    NotUnimodular(i64),
    #[error("not a Fano triangle: {0}")]
    InvalidTriangle(String),
    #[error("invalid weighted cycle: {0}")]
    InvalidCycle(String),
    #[error("weighted cycle is not realizable: {0}")]
    NotRealizable(NotRealizableReason),
    #[error("cannot blow down: {0}")]
    InvalidBlowDown(String),
    #[error("cycle is not basic")]
    NotBasic,
    #[error("cascade structure violated at vertex {index}: {detail}")]
    StructureViolation { index: usize, detail: String },
    #[error("{0} has no fibration structure")]
    NoFibration(String),
    #[error("singular intersection matrix")]
    SingularSystem,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("line {line}: {message}")]
    MalformedLine { line: usize, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
