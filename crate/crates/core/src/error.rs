//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by the algebra kernels.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Inversion of a series whose leading coefficient is zero or is not a
    /// single radical term `r*sqrt(d)`.
    #[error("series is not invertible: leading coefficient {0:?}")]
    NotInvertible(String),

    /// Square root of a series whose leading coefficient is not a single
    /// positive rational term.
    #[error("series square root undefined: leading coefficient {0:?}")]
    NotASquareRootDomain(String),

    /// A generator name that does not belong to the algebra.
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    /// Mixing polynomials from different algebras.
    #[error("algebra mismatch: {0} vs {1}")]
    AlgebraMismatch(&'static str, &'static str),

    /// A product exceeded the configured total-degree cap.
    #[error("total degree {degree} exceeds the cap {cap}")]
    DegreeOverflow { degree: u32, cap: u32 },

    /// Arguments outside an operation's domain (negative binomial index,
    /// labels outside a representation, ...).
    #[error("domain error: {0}")]
    DomainError(String),

    /// A vector that should be normalizable failed the single-rational-term
    /// leading-coefficient requirement. Indicates an internal inconsistency.
    #[error("normalization error: {0}")]
    NormalizationError(String),

    /// Text input that does not conform to the polynomial grammar.
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    /// A consistency check inside an algorithm failed; this is a bug, not
    /// bad input.
    #[error("internal inconsistency: {0}")]
    Internal(String),

    /// A value that does not fit the JSON schema (for example a coefficient
    /// outside the 64-bit range).
    #[error("serialization error: {0}")]
    Serialize(String),
}

pub type Result<T> = std::result::Result<T, Error>;
