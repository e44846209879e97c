use thiserror::Error;

/// Errors raised by the algebra kernels.
///
/// Every variant maps to a stable machine-readable code (see [`Error::code`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("matrix is singular")]
    Singular,
    #[error("degenerate Macaulay minor: {0}")]
    DegenerateMinor(String),
    #[error("interpolation failed: {0}")]
    Interpolation(String),
    #[error("reconstruction failed: {0}")]
    Reconstruction(String),
    #[error("point lies in the base locus of the map")]
    BasePoint,
    #[error("map is not a morphism (resultant vanishes)")]
    NotMorphism,
    #[error("elimination output vanished identically: {0}")]
    VanishingElimination(String),
    #[error("Jacobian determinant vanishes identically")]
    ZeroJacobian,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    /// Stable machine-readable error code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid-input",
            Error::RingMismatch(_) => "ring-mismatch",
            Error::Arity { .. } => "arity-mismatch",
            Error::Parse { .. } => "parse-error",
            Error::ZeroPolynomial => "zero-polynomial",
            Error::NotHomogeneous(_) => "not-homogeneous",
            Error::Singular => "singular-matrix",
            Error::DegenerateMinor(_) => "degenerate-minor",
            Error::Interpolation(_) => "interpolation-failed",
            Error::Reconstruction(_) => "reconstruction-failed",
            Error::BasePoint => "base-point",
            Error::NotMorphism => "not-morphism",
            Error::VanishingElimination(_) => "vanishing-elimination",
            Error::ZeroJacobian => "zero-jacobian",
            Error::Unsupported(_) => "unsupported",
            Error::Precondition(_) => "precondition",
            Error::Verification(_) => "verification-failed",
        }
    }

    /// True for failures caused by computational degeneracy rather than bad input.
    pub fn is_degeneracy(&self) -> bool {
        matches!(
            self,
            Error::DegenerateMinor(_)
                | Error::Interpolation(_)
                | Error::Reconstruction(_)
                | Error::VanishingElimination(_)
                | Error::ZeroJacobian
                | Error::Verification(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
