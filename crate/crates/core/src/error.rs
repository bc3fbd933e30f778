use thiserror::Error;

/// Errors raised across the pipeline. Each variant maps to a stable code via [`Error::code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("point {0} lies outside [0,1)")]
    OutOfDomain(String),
    #[error("point {x} lies outside the section [0, 2^-{exp})")]
    OutsideSection { x: String, exp: u32 },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("q = {0} is a power of 2; rotated odometers require q not a power of 2 (override with --allow-pow2)")]
    PowerOfTwo(usize),
    #[error("rigidity violation for letter {letter} at step {step}: {detail}")]
    RigidityViolation { letter: usize, step: usize, detail: String },
    #[error("letter {letter} did not return to L_1 within {bound} steps")]
    NoReturn { letter: usize, bound: usize },
    #[error("structure violation: {0}")]
    StructureViolation(String),
    #[error("no repeated permutation within {0} renormalization steps")]
    BoundExceeded(usize),
    #[error("substitution is not expanding: |χ(0)| = 1")]
    NotExpanding,
    #[error("factorization incomplete: {0}")]
    FactorizationIncomplete(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("certification failed: {0}")]
    CertificationFailed(String),
    #[error("validation failed at index {index}: {detail}")]
    ValidationFailed { index: usize, detail: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::OutOfDomain(_) => "OUT_OF_DOMAIN",
            Error::OutsideSection { .. } => "OUTSIDE_SECTION",
            Error::InvalidPermutation(_) => "INVALID_PERMUTATION",
            Error::PowerOfTwo(_) => "POWER_OF_TWO",
            Error::RigidityViolation { .. } => "RIGIDITY_VIOLATION",
            Error::NoReturn { .. } => "NO_RETURN",
            Error::StructureViolation(_) => "STRUCTURE_VIOLATION",
            Error::BoundExceeded(_) => "BOUND_EXCEEDED",
            Error::NotExpanding => "NOT_EXPANDING",
            Error::FactorizationIncomplete(_) => "FACTORIZATION_INCOMPLETE",
            Error::PrecisionExhausted(_) => "PRECISION_EXHAUSTED",
            Error::CertificationFailed(_) => "CERTIFICATION_FAILED",
            Error::ValidationFailed { .. } => "VALIDATION_FAILED",
            Error::Parse(_) => "PARSE",
            Error::InvalidArgument(_) => "INVALID_ARGUMENT",
            Error::Io(_) => "IO",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
