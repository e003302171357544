use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("expression is not homogeneous (found degrees {0} and {1})")]
    NonHomogeneous(u32, u32),

    #[error("polynomial is identically zero")]
    ZeroPolynomial,

    #[error("line {line}: {msg}")]
    MalformedRow { line: usize, msg: String },

    #[error("lines {0} and {1} are proportional")]
    ProportionalLines(usize, usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("subspace containment violated: {0}")]
    Containment(String),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("curve is not reduced: {0}")]
    NotReduced(String),

    #[error("curve is a pencil of lines through one point (mdr = 0); splitting analysis is undefined")]
    Pencil,

    #[error("genericity sampling exhausted after {retries} lines in coefficient box [-{coeff_box}, {coeff_box}]; enlarge the box with --coeff-box")]
    GenericityExhausted { retries: usize, coeff_box: i64 },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. }
            | Error::NonHomogeneous(..)
            | Error::ZeroPolynomial
            | Error::MalformedRow { .. }
            | Error::ProportionalLines(..)
            | Error::NotReduced(_)
            | Error::Pencil
            | Error::OutOfRange(_) => 1,
            Error::GenericityExhausted { .. } => 3,
            _ => 2,
        }
    }
}
