use thiserror::Error;

use crate::field::FieldDescriptor;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("prime modulus {0} exceeds the supported bound 2^32")]
    ModulusTooLarge(u64),

    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch {
        left: FieldDescriptor,
        right: FieldDescriptor,
    },

    #[error("variable count mismatch: {left} vs {right}")]
    VariableMismatch { left: usize, right: usize },

    #[error("division by zero in {field} (characteristic {characteristic})")]
    Characteristic {
        field: FieldDescriptor,
        characteristic: u64,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("hypercube enumeration over {nvars} variables exceeds the limit of {limit}")]
    EnumerationLimit { nvars: usize, limit: usize },

    #[error("polynomial is not symmetric")]
    NotSymmetric,

    #[error("polynomial is not homogeneous of degree {expected}")]
    NotHomogeneous { expected: u32 },

    #[error("polynomial is not divisible by x_1*...*x_n")]
    NotDivisibleByVariableProduct,

    #[error("monomial {0:?} of the quotient does not have exactly one odd exponent")]
    OddExponentCount(Vec<u32>),

    #[error("degree {degree} exceeds the variable count {nvars}; power-sum representation is not unique")]
    DegreeExceedsVariables { degree: u32, nvars: usize },

    #[error("polynomial is not in the span of the W_k generators")]
    NotInWk,

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
