use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("incompatible spaces: {0}")]
    IncompatibleSpaces(String),

    #[error("complement is not stable under ad({0})")]
    NotStable(String),

    #[error("graded tensor action needs an even-dimensional first factor, got dimension {0}")]
    OddFirstFactor(usize),

    #[error("scale factor undefined for eigenvalue {0}")]
    UndefinedScale(String),

    #[error("eigenvalue {0} is not in the scalar field")]
    EigenvalueOutsideField(String),

    #[error("inadmissible block: {0}")]
    InadmissibleBlock(String),

    #[error("truncation artifact: {0}")]
    TruncationArtifact(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid triple: {0}")]
    InvalidTriple(String),

    #[error("not a scalar operator: {0}")]
    NonScalar(String),

    #[error("symbol left in h after transfer: {0}")]
    ResidualHSymbol(String),

    #[error("vector is not in the span: {0}")]
    NotInSpan(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("singular: {0}")]
    Singular(String),

    #[error("invalid lie algebra: {0}")]
    InvalidLie(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),
}
