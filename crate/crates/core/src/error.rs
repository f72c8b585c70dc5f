use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown quantale `{0}`")]
    UnknownQuantale(String),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("scalar {0} is outside the quantale's domain")]
    InvalidScalar(String),
    #[error("quantale mismatch: `{left}` vs `{right}`")]
    QuantaleMismatch { left: String, right: String },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("vertex set mismatch: {0}")]
    DomainMismatch(String),
    #[error("invalid vertex set: {0}")]
    InvalidVertexSet(String),
    #[error("invalid function: {0}")]
    InvalidFunction(String),
    #[error("function is not a morphism of matrices: {0}")]
    NotAMorphism(String),
    #[error("matrix is not an R-category: {0}")]
    NotAnRCategory(String),
    #[error("open matrix is not functional: {0}")]
    NotFunctional(String),
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
    #[error("closure did not stabilize within {0} iterations")]
    NonStabilizing(usize),
    #[error("verification mismatch: {0}")]
    VerificationMismatch(String),
    #[error("empty decomposition")]
    EmptyDecomposition,
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("{0}")]
    Io(String),
}

impl Error {
    pub fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}
