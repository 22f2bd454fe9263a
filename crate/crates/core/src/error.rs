use thiserror::Error;

/// Errors produced by the library.
///
/// Variants fall in three families: validation failures (bad input shapes or
/// values), guard failures (an input exceeds an enumeration limit), and
/// schema failures from the JSON loaders.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("guard `{guard}` exceeded: {value} > {limit}")]
    GuardExceeded {
        guard: &'static str,
        limit: u64,
        value: u64,
    },

    #[error("invalid alternating form: {0}")]
    InvalidForm(String),

    #[error("invalid group table: {0}")]
    InvalidTable(String),

    #[error("element id {0} is not in the group")]
    InvalidElement(usize),

    #[error("character is not a homomorphism on the generated subgroup: {0}")]
    InconsistentCharacter(String),

    #[error("not an elementary abelian subgroup: {0}")]
    NotElementaryAbelian(String),

    #[error(
        "regularity is only decided for square systems: {gens} generators in {nvars} variables"
    )]
    NonSquareSystem { gens: usize, nvars: usize },

    #[error("linearly dependent vectors: {0}")]
    DependentVectors(String),

    #[error("matrix is not invertible: {0}")]
    NotInvertible(String),

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed JSON: {0}")]
    MalformedJson(String),

    #[error("i/o failure: {0}")]
    Io(String),

    #[error("schema violations: {}", .0.join("; "))]
    Schema(Vec<String>),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::GuardExceeded { .. })
    }

    pub(crate) fn guard(guard: &'static str, limit: u64, value: u64) -> Self {
        Error::GuardExceeded {
            guard,
            limit,
            value,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
