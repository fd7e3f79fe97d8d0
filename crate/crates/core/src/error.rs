use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("fields of characteristic 2 are not supported")]
    Characteristic2,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("unrecognized field spec {0:?} (expected C, C:<p>, Fp:<p>, Q, R or Qp:<p>)")]
    InvalidFieldSpec(String),
    #[error("cannot parse {0:?} as a scalar")]
    InvalidScalar(String),
    #[error("{0} must be nonzero")]
    ZeroInput(&'static str),
    #[error("{op} is not available over {field}")]
    UnsupportedField { op: &'static str, field: String },
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("matrix is singular")]
    Singular,
    #[error("element is not a primitive idempotent")]
    NotPrimitive,
    #[error("map does not square to the identity")]
    NotInvolutive,
    #[error("no quaternion subalgebra with the requested norm form was found")]
    NoEmbedding,
    #[error("there are infinitely many isomorphism classes over {0}")]
    InfiniteClassCount(String),
    #[error("derivation computation needs characteristic other than 2 and 3, got {0}")]
    UnsupportedCharacteristic(u64),
    #[error("prime list rejected: {0}")]
    InvalidPrimes(String),
    #[error("presentation mismatch: {0}")]
    Presentation(String),
    #[error("restricted trace form does not match the torus identifications: {0}")]
    InvariantMismatch(String),
    #[error("subdiagram {0} is not a recognized Dynkin type")]
    UnrecognizedDiagram(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
