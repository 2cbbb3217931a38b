use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    ZeroDenominator,
    #[error("coefficient has a pole at q = 1")]
    PoleAtOne,
    #[error("coefficient has a pole at q = {0}")]
    PoleAt(String),
    #[error("coefficient does not vanish at q = 1")]
    NotVanishingAtOne,
    #[error("words have different degrees ({0} and {1})")]
    DegreeMismatch(usize, usize),
    #[error("position {position} out of range for a word of length {len}")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("missing relation for generator pair ({0}, {1})")]
    MissingRelation(usize, usize),
    #[error("invalid algebra specification: {0}")]
    InvalidSpec(String),
    #[error("operation requires homogeneous quadratic relations")]
    InhomogeneousAlgebra,
    #[error("algebra failed validation: {0}")]
    NotValidated(String),
    #[error("q-symmetrization did not stabilize within {0} iterations")]
    NoConvergence(usize),
    #[error("degree budget exceeded: degree {degree} with {dim} basis words (use --force)")]
    DegreeBudgetExceeded { degree: usize, dim: u128 },
    #[error("dual algebra is not quasipolynomial: {0}")]
    NotQuasipolynomial(String),
    #[error("singular linear system")]
    SingularSystem,
    #[error("wrong algebra: {0}")]
    WrongAlgebra(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn parse(column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line: 1,
            column,
            message: message.into(),
        }
    }

    /// Re-anchors a single-line parse error onto `line`, shifting the column by
    /// `offset` characters.
    pub(crate) fn at_line(self, line: usize, offset: usize) -> Self {
        match self {
            Error::Parse {
                column, message, ..
            } => Error::Parse {
                line,
                column: column + offset,
                message,
            },
            other => other,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
