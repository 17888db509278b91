use thiserror::Error;

/// Errors raised by the exact kernel and the crossnorm solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different fields ({left} vs {right})")]
    MixedFields { left: String, right: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("subspace does not live in the given ambient space: {0}")]
    SubspaceNotInAmbient(String),

    #[error("basis vector {index} of the subspace is not annihilated by the map")]
    KernelConditionViolated { index: usize },

    #[error("free vectors are generated by different carriers: {0}")]
    MixedCarriers(String),

    #[error("input vectors are linearly dependent")]
    DependentInput,

    #[error("realizations have different factor spaces: {0}")]
    FactorSpaceMismatch(String),

    #[error("field {0} is not a subfield of the reals")]
    NonRealField(String),

    #[error("unsupported norm tag {0:?} (expected 1, 2 or inf)")]
    UnsupportedTag(String),

    #[error("numeric overflow: {0}")]
    Overflow(String),

    #[error("bilinear map does not factor through the tensor space: {0}")]
    NoFactorization(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("unsupported prime modulus {0}")]
    UnsupportedModulus(u64),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn shape(msg: impl Into<String>) -> Error {
    Error::ShapeMismatch(msg.into())
}
