use thiserror::Error;

/// Errors raised by the invariant computations.
///
/// Every variant has a stable machine-readable name (see [`Error::name`]) that
/// the CLI and the C interface report alongside the message.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("exponent list is empty")]
    EmptyExponents,

    #[error("exponent {value} at position {index} is invalid (every exponent must be at least 2)")]
    InvalidExponent { index: usize, value: i64 },

    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),

    #[error("signature is only defined for an odd number of variables, got {variables}")]
    OddDimension { variables: usize },

    #[error("{what} needs {required} but the budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        required: u128,
        budget: u128,
    },

    #[error("modulus {modulus} is not a multiple of exponent {exponent}")]
    NotCommonMultiple { modulus: u64, exponent: u64 },

    #[error("cannot round [{lower}, {upper}] to a unique integer")]
    AmbiguousRounding { lower: String, upper: String },

    #[error("operator has no finite order within {limit} iterations")]
    NotFiniteOrder { limit: u64 },

    #[error("links are not comparable: {0}")]
    IncomparableLinks(String),

    #[error("signature difference {difference} is not divisible by 8")]
    NotDivisibleBy8 { difference: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable identifier used in serialized error objects.
    pub fn name(&self) -> &'static str {
        match self {
            Error::EmptyExponents => "EmptyExponents",
            Error::InvalidExponent { .. } => "InvalidExponent",
            Error::InvalidFamily(_) => "InvalidFamily",
            Error::OddDimension { .. } => "OddDimension",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::NotCommonMultiple { .. } => "NotCommonMultiple",
            Error::AmbiguousRounding { .. } => "AmbiguousRounding",
            Error::NotFiniteOrder { .. } => "NotFiniteOrder",
            Error::IncomparableLinks(_) => "IncomparableLinks",
            Error::NotDivisibleBy8 { .. } => "NotDivisibleBy8",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
