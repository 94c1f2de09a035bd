use thiserror::Error;

/// Errors raised by the library. Every variant is a domain error: the CLI maps
/// all of them to exit code 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid polarization: {0}")]
    InvalidPolarization(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("vector is not primitive (entry gcd {gcd})")]
    NotPrimitive { gcd: String },

    #[error("matrix has rank zero")]
    RankZero,

    #[error("expected rank {expected}, got {got}")]
    Rank { expected: usize, got: usize },

    #[error("matrix is not unimodular (determinant {det})")]
    NotUnimodular { det: String },

    #[error("divisor tuple {tuple:?} is not feasible: {reason}")]
    Infeasible { tuple: Vec<String>, reason: String },

    #[error("product {product} does not divide {bound}")]
    InvalidProduct { product: String, bound: String },

    #[error("rows {i} and {j} are not orthogonal: pairing {value}")]
    NotIsotropic { i: usize, j: usize, value: String },

    #[error("polarization {0} is not square-free and coprime")]
    UnsupportedPolarization(String),

    /// A constructive step produced a result that contradicts the statement it
    /// implements. Carries a human-readable dump of the state at failure.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable kebab-case name of the variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid-input",
            Error::InvalidPolarization(_) => "invalid-polarization",
            Error::Dimension { .. } => "dimension",
            Error::NotPrimitive { .. } => "not-primitive",
            Error::RankZero => "rank-zero",
            Error::Rank { .. } => "rank",
            Error::NotUnimodular { .. } => "not-unimodular",
            Error::Infeasible { .. } => "infeasible",
            Error::InvalidProduct { .. } => "invalid-product",
            Error::NotIsotropic { .. } => "not-isotropic",
            Error::UnsupportedPolarization(_) => "unsupported-polarization",
            Error::Invariant(_) => "invariant",
        }
    }
}
