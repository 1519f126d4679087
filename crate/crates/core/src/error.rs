use thiserror::Error;

/// Errors surfaced by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("invalid bundle pair: {0}")]
    InvalidBundle(String),
    #[error("invalid section: {0}")]
    InvalidSection(String),
    #[error("invalid group element: {0}")]
    InvalidGroupElement(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("point is not on the curve: {0}")]
    NotOnCurve(String),
    #[error("section is not singular above the given point")]
    NotSingular,
    #[error("singular locus above the point is not rational over the working field")]
    IrrationalSingularPoint,
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("region is unbounded")]
    Unbounded,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("not a monoid element: {0}")]
    NotInMonoid(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
