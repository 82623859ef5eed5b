use thiserror::Error;

/// Returned when an element's norm cannot be resolved within the search cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("norm exceeds cap {cap}")]
pub struct ExceedsCap {
    pub cap: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid modulus {0}: must be at least 2")]
    InvalidModulus(u64),
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("cannot parse {input:?} as an element of {ring}")]
    Parse { ring: String, input: String },
    #[error("invalid weight table: {0}")]
    InvalidWeights(String),
    #[error("the zero ideal is not allowed here")]
    ZeroIdeal,
    #[error("the unit ideal is not allowed here")]
    UnitIdeal,
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("norm of {element} exceeds cap {cap}")]
    ExceedsCap { element: String, cap: u64 },
    #[error("coordinate {index}: norm exceeds cap {cap}")]
    CoordinateExceedsCap { index: usize, cap: u64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("inconsistent factor data: {0}")]
    InconsistentFactor(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("window {window} does not separate the parameters (minimal separating window: {minimal})")]
    WindowTooSmall { window: usize, minimal: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("construction failed: {0}")]
    Construction(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
