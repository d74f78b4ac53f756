use num_bigint::BigInt;

/// Errors raised by the algebraic operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("malformed group spec {spec:?}: {reason}")]
    Parse { spec: String, reason: String },
    #[error("cyclic modulus must be at least 2, got {0}")]
    Modulus(BigInt),
    #[error("element {elem} does not belong to {group}")]
    GroupMismatch { elem: String, group: String },
    #[error("matrix does not define a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("generating set is empty")]
    EmptySet,
    #[error("{0} has nonzero class sum and is not in the quotient group")]
    NotInQuotient(String),
    #[error("the zero element has no normed generator")]
    ZeroElement,
    #[error("{0} is a unit")]
    Unit(String),
    #[error("endomorphism does not stabilize the killed subgroup: {0}")]
    UnstableSubgroup(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
