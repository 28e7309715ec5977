use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// q outside (0, 1]. Values q > 1 are reachable through the q ↔ 1/q
    /// symmetry combined with the reflection J3 ↔ −J3.
    #[error(
        "deformation parameter q = {0} is outside (0, 1]; for q > 1 use 1/q and reflect J3 -> -J3 (ground and top states swap)"
    )]
    QOutOfRange(f64),

    #[error("index out of range: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("series neither terminates nor converges within {0} terms")]
    NonTermination(usize),

    #[error("series has a vanishing denominator at term {0}")]
    SingularSeries(usize),

    #[error("ground-state sample at index {0} is not positive")]
    NonPositiveGroundState(usize),
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
