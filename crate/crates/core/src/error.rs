use thiserror::Error;

/// Errors raised by the library. The CLI maps these onto exit codes via
/// [`Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("scalars over Q(sqrt {0}) and Q(sqrt {1}) cannot be combined")]
    MixedPrime(u32, u32),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error("relation N_i = p Ad(Phi_i)(N_(i+1)) fails at index {index}")]
    RelationViolated { index: usize },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("unsupported case: {0}")]
    Unsupported(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// 1 for bad input, 2 for inputs outside what the algorithms cover,
    /// 3 for a broken internal invariant.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Unsupported(_) => 2,
            Error::Internal(_) => 3,
            _ => 1,
        }
    }

    /// Short machine-readable tag used in JSON error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division_by_zero",
            Error::NotPrime(_) => "not_prime",
            Error::MixedPrime(..) => "mixed_prime",
            Error::Shape(_) => "shape",
            Error::Singular => "singular",
            Error::NotNilpotent => "not_nilpotent",
            Error::RelationViolated { .. } => "relation_violated",
            Error::Invalid(_) => "invalid_input",
            Error::Unsupported(_) => "unsupported",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
