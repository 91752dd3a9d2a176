use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("invalid perversity: {0}")]
    InvalidPerversity(String),
    #[error("no valid perversity dominates the pointwise sum")]
    NoCover,
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("unknown simplex {0:?}")]
    UnknownSimplex(Vec<usize>),
    #[error("complex failed validation: {0}")]
    NotValidated(String),
    #[error("complex is not oriented")]
    NotOriented,
    #[error("product complex unavailable: {0}")]
    ProductUnavailable(String),
    #[error("no dual cocycle over {coefficients}: {reason}")]
    DualizationFailed { coefficients: &'static str, reason: String },
    #[error("linear system has no solution")]
    NoSolution,
    #[error("simplices mix combinatorial and geometric modes")]
    MixedMode,
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("unsupported: {0}")]
    ModeUnsupported(String),
    #[error("input outside the operation's domain: {0}")]
    NotInDomain(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}
