use thiserror::Error;

/// Errors raised by the library.
///
/// Variants split into *domain* errors (mathematically invalid input) and
/// *usage* errors (bad configuration or resource limits); the CLI maps the two
/// groups to different exit codes.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is unsupported (need an odd prime p >= {1})")]
    UnsupportedModulus(u64, u64),
    #[error("modulus {0} too large (p^2 - 1 must fit in 64 bits)")]
    ModulusTooLarge(u64),
    #[error("mixed moduli {0} and {1}")]
    ModulusMismatch(u64, u64),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("zero has no multiplicative order")]
    ZeroOrder,
    #[error("{0} is not a quadratic residue mod {1}")]
    NonResidue(u64, u64),
    #[error("subgroup order {order} does not divide the ambient group order {ambient}")]
    NotADivisor { order: u64, ambient: u64 },
    #[error("({x}, {y}, {z}) is not on the Markoff surface mod {p}")]
    NotOnSurface { p: u64, x: u64, y: u64, z: u64 },
    #[error("recurrence initial state is (0, 0)")]
    ZeroInitialState,
    #[error("x = {0} has xi^2 = 1; the orbit parametrization degenerates")]
    DegenerateOrder(u64),
    #[error("x1 = {0} and x2 = {1} satisfy x1 = +-x2")]
    CoincidentOrbits(u64, u64),
    #[error("parametrized value set disagrees with the iterated orbit for x = {0}")]
    ParametrizationMismatch(u64),
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("polynomial has degree 0 in Y")]
    ConstantInY,
    #[error("homogeneous polynomial (exponent gcd 0): the bound does not apply")]
    Homogeneous,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("p = {p} exceeds the memory ceiling {ceiling}")]
    MemoryCeiling { p: u64, ceiling: u64 },
    #[error("work {work} exceeds the ceiling {ceiling}")]
    WorkCeiling { work: u64, ceiling: u64 },
    #[error("io error: {0}")]
    Io(String),
    #[error("malformed record: {0}")]
    Record(String),
}

impl Error {
    /// True for errors caused by configuration or resource limits rather than
    /// by the mathematics of the input.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::NotPrime(_)
                | Error::UnsupportedModulus(..)
                | Error::ModulusTooLarge(_)
                | Error::ModulusMismatch(..)
                | Error::InvalidArgument(_)
                | Error::MemoryCeiling { .. }
                | Error::WorkCeiling { .. }
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Record(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
