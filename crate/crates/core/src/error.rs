use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("cyclotomic elements of order {left} and {right} cannot be combined")]
    OrderMismatch { left: u32, right: u32 },

    #[error("exponent {k} is a multiple of the modulus {modulus}; tau factors use nonzero degrees only")]
    ZeroExponent { k: i64, modulus: u32 },

    #[error("modulus must be at least {min}, got {got}")]
    ModulusTooSmall { min: u32, got: u32 },

    #[error("multi-index has {got} entries, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("individual degree {degree} at position {position} is not below the modulus {modulus}")]
    IndividualDegree { position: usize, degree: u32, modulus: u32 },

    #[error("grid with {points} points exceeds the enumeration cap {cap}")]
    CapExceeded { points: u128, cap: u64 },

    #[error("sample table has {got} entries, the grid has {expected}")]
    IncompleteSamples { expected: usize, got: usize },

    #[error("the zero polynomial has no maximum support size")]
    ZeroPolynomial,

    #[error("|z| = {modulus} exceeds eps* = {eps_star}; the nonnegative lift is not guaranteed")]
    OutsideLiftRadius { modulus: f64, eps_star: f64 },

    #[error("support size {requested} is not the maximum support size {actual}")]
    NotTopLevel { requested: usize, actual: usize },

    #[error("Vandermonde inversion residual {residual:e} exceeds {tolerance:e}")]
    Unsound { residual: f64, tolerance: f64 },

    #[error("matrix is numerically singular")]
    Singular,

    #[error("modulus {0} is not an odd prime")]
    NotOddPrime(u32),

    #[error("index set is not a single inseparable class: {0}")]
    InvalidProjectionSet(String),

    #[error("{what} is out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },

    #[error("degree {degree} is invalid: {reason}")]
    InvalidDegree { degree: usize, reason: &'static str },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
