use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("an ideal needs at least one variable")]
    NoVariables,
    #[error("monomial has {found} exponents, expected {expected}")]
    ExponentLength { expected: usize, found: usize },
    #[error("degree-0 generator: the unit ideal has no Artinian quotient")]
    UnitIdeal,
    #[error("ideal is not Artinian: no pure power of x{0}")]
    NotArtinian(usize),
    #[error("generator {0} is not quadratic")]
    NotQuadratic(String),
    #[error("quadratic ideal is missing the square of x{0}")]
    MissingSquare(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("{{{0},{1}}} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("graphs are limited to {max} vertices, got {got}")]
    TooManyVertices { got: usize, max: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unsupported characteristic {0}: the statement assumes char != 2")]
    UnsupportedCharacteristic(u64),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
