use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero divisor: quaternion norm is below the zero threshold")]
    ZeroDivisor,

    #[error("dimension mismatch in {op}: {lhs:?} vs {rhs:?}")]
    DimensionMismatch {
        op: &'static str,
        lhs: (usize, usize),
        rhs: (usize, usize),
    },

    #[error("matrix is not square: {0}x{1}")]
    NotSquare(usize, usize),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("row and column determinants of a Hermitian matrix disagree (spread {0:e})")]
    InconsistentDeterminants(f64),

    #[error("determinant dimension {n} exceeds the cap {max}")]
    DimensionTooLarge { n: usize, max: usize },

    #[error("invalid subset size {r} for ambient dimension {n}")]
    InvalidSize { r: usize, n: usize },

    #[error("index {index} out of range 1..={n}")]
    InvalidIndex { index: usize, n: usize },

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("missing coefficient {slot} for equation kind {kind}")]
    MissingSlot { kind: &'static str, slot: &'static str },

    #[error("equation is inconsistent: {0}")]
    Inconsistent(String),

    #[error("free parameter constraint violated: {0}")]
    ConstraintViolated(String),
}

impl Error {
    pub(crate) fn mismatch(op: &'static str, lhs: (usize, usize), rhs: (usize, usize)) -> Self {
        Error::DimensionMismatch { op, lhs, rhs }
    }
}
