use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Tensor or vector dimensions do not agree.
    #[error("shape error: {0}")]
    Shape(String),

    /// An argument is outside its admissible range (mode index, order, flags).
    #[error("invalid argument: {0}")]
    Argument(String),

    /// Evaluation at a point where the quantity is undefined (e.g. gradient of a norm at 0).
    #[error("domain error: {0}")]
    Domain(String),

    /// A symmetric tensor was required.
    #[error("tensor is not symmetric (max asymmetry {max_asymmetry:e}); symmetrize it or use mode eigenpairs")]
    NotSymmetric { max_asymmetry: f64 },

    /// The critical set is not a finite set of nondegenerate points.
    #[error("degenerate tensor: {0}")]
    Degenerate(String),

    /// Input violates an operation's precondition (e.g. non-unit vector, large residual).
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Tensor or vector document could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
