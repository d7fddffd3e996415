use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("point {point} outside the open unit disk (|z| = {modulus})")]
    Domain { point: String, modulus: f64 },

    #[error("weight index {index} beyond custom sequence of length {len}")]
    OutOfRange { index: usize, len: usize },

    #[error("matrix is not positive definite (pivot {pivot} = {value:e})")]
    NotPositiveDefinite { pivot: usize, value: f64 },

    #[error("matrix is numerically singular (pivot {pivot})")]
    Singular { pivot: usize },

    #[error("degenerate configuration: {0}")]
    Degenerate(String),
}

impl Error {
    /// Whether the failure is a numerical degeneracy rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NotPositiveDefinite { .. } | Error::Singular { .. } | Error::Degenerate(_)
        )
    }
}
