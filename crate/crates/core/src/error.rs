use thiserror::Error;

/// Errors raised by the exact algebra routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("matrix of size {size} exceeds the supported limit of {limit}")]
    TooLarge { size: usize, limit: usize },

    #[error("expected rational (constant) entries, found a non-constant polynomial")]
    NotRational,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("wrong system shape: {0}")]
    WrongShape(String),

    #[error("leading coefficient vanishes in every available chart")]
    DegenerateLeading,

    #[error("linear system is inconsistent")]
    Inconsistent,

    #[error("substituted form vanishes identically")]
    IdenticallyZero,

    #[error("could not draw a non-degenerate sample after {attempts} attempts")]
    DegenerateSample { attempts: usize },

    #[error("system is not singular: the determinantal matrix has trivial kernel")]
    NotSingular,

    #[error("zero denominator in projective chart: {0}")]
    ZeroDenominator(String),

    #[error("witness check failed: {0}")]
    WitnessMismatch(String),

    #[error("discriminant is not in the product ideal: no certificate exists")]
    NoCertificate,

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
