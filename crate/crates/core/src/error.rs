use thiserror::Error;

/// Errors raised by the skeleton, realizability and moduli pipelines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("points {first} and {second} agree up to the available truncation order")]
    TruncationExhausted { first: usize, second: usize },

    #[error("point {point} has negative valuation {valuation}; apply a change of coordinates first")]
    NegativeValuation { point: usize, valuation: i64 },

    #[error("points {first} and {second} coincide")]
    DuplicatePoint { first: usize, second: usize },

    #[error("distance matrix is not a tree metric: {0}")]
    NotATreeMetric(String),

    #[error("divisor has degree {degree}, expected 0")]
    DegreeNonZero { degree: i64 },

    #[error("point {0} is not a leaf of the tree")]
    UnknownPoint(usize),

    #[error("invalid covering data: {0}")]
    InvalidCoveringData(String),

    #[error("assembled covering graph has {components} connected components")]
    DisconnectedCover { components: usize },

    #[error("y^n - f(x) is reducible: gcd of n, the multiplicities and deg f is {gcd}")]
    Reducible { gcd: u64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("covering is not realizable: {0}")]
    NotRealizable(String),

    #[error("degree {0} is not prime")]
    CompositeDegree(u64),

    #[error("inadmissible signature: {0}")]
    InadmissibleSignature(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::TruncationExhausted { .. } => "TruncationExhausted",
            Error::NegativeValuation { .. } => "NegativeValuation",
            Error::DuplicatePoint { .. } => "DuplicatePoint",
            Error::NotATreeMetric(_) => "NotATreeMetric",
            Error::DegreeNonZero { .. } => "DegreeNonZero",
            Error::UnknownPoint(_) => "UnknownPoint",
            Error::InvalidCoveringData(_) => "InvalidCoveringData",
            Error::DisconnectedCover { .. } => "DisconnectedCover",
            Error::Reducible { .. } => "Reducible",
            Error::InvalidInput(_) => "InvalidInput",
            Error::NotRealizable(_) => "NotRealizable",
            Error::CompositeDegree(_) => "CompositeDegree",
            Error::InadmissibleSignature(_) => "InadmissibleSignature",
        }
    }

    /// Whether the error is caused by the caller's input rather than by a
    /// broken invariant inside the library.
    pub fn is_user_error(&self) -> bool {
        !matches!(self, Error::InvalidCoveringData(_) | Error::DisconnectedCover { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
