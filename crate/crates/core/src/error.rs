use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("cyclic modulus {0} is below 2")]
    ModulusTooSmall(u64),

    #[error("dihedral group D{0} rejected: n must be at least 3")]
    DihedralTooSmall(u64),

    #[error("group order {order} exceeds the cap of {cap} elements")]
    CapExceeded { order: u128, cap: usize },

    #[error("malformed element: {0}")]
    MalformedElement(String),

    #[error("order {order} is not realizable: it does not divide the group exponent {exponent}")]
    OrderNotRealizable { order: u64, exponent: u64 },

    #[error("vertex index {index} out of range for a graph on {size} vertices")]
    VertexOutOfRange { index: usize, size: usize },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("matrix shape error: {0}")]
    Shape(String),

    #[error("matrix dimension {dim} exceeds the characteristic polynomial cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("no closed form known for {0}")]
    NoClosedForm(String),

    #[error("arithmetic overflow while evaluating {0}")]
    Overflow(&'static str),

    #[error("internal error: {0}")]
    Internal(String),
}
