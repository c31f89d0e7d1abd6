use thiserror::Error;

/// Errors raised by the library.
///
/// Equation checks that simply fail are not errors; they return `Ok(false)`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed magma table: {0}")]
    MalformedTable(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("operator is singular: {0}")]
    Singular(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("image is not contained in kernel (d^2 != 0?): {0}")]
    DifferentialBug(String),
    #[error("not an abelian group table: {0}")]
    NotAbelianGroup(String),
    #[error("operator does not satisfy the hexagon equation")]
    NotHexagon,
}

pub type Result<T> = std::result::Result<T, Error>;
