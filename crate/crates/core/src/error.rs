use thiserror::Error;

use crate::parse::ParseError;

/// Every fallible engine operation reports one of these.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("depth {requested} is smaller than the element depth {required}")]
    DepthTooSmall { requested: u32, required: u32 },
    #[error("element is not gauge invariant (a term has a != b)")]
    NotGaugeInvariant,
    #[error("S1-compression did not stabilize to a scalar within {bound} steps")]
    NotStabilized { bound: usize },
    #[error("relation violated: {0}")]
    RelationViolated(String),
    #[error("{0} is not odd")]
    NotOdd(i64),
    #[error("not unitary: {0}")]
    NotUnitary(String),
    #[error("extension condition failed: {0}")]
    ExtensionConditionFailed(String),
    #[error("not an S2-type isometry: {0}")]
    NotInS2(String),
    #[error("reconstructed function is not circle valued")]
    NotUnitaryFunction,
    #[error("not a solution: {0}")]
    NotASolution(String),
    #[error("function is not unimodular")]
    NotUnimodular,
    #[error("grid undersampled: phase jump {jump:.4} at index {index}")]
    Undersampled { index: usize, jump: f64 },
    #[error("psi(1) = ({re}, {im}) is not 1")]
    NotNormalized { re: f64, im: f64 },
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: i64, len: u32 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::DepthTooSmall { .. } => "DepthTooSmall",
            Error::NotGaugeInvariant => "NotGaugeInvariant",
            Error::NotStabilized { .. } => "NotStabilized",
            Error::RelationViolated(_) => "RelationViolated",
            Error::NotOdd(_) => "NotOdd",
            Error::NotUnitary(_) => "NotUnitary",
            Error::ExtensionConditionFailed(_) => "ExtensionConditionFailed",
            Error::NotInS2(_) => "NotInS2",
            Error::NotUnitaryFunction => "NotUnitaryFunction",
            Error::NotASolution(_) => "NotASolution",
            Error::NotUnimodular => "NotUnimodular",
            Error::Undersampled { .. } => "Undersampled",
            Error::NotNormalized { .. } => "NotNormalized",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::InvalidInput(_) => "InvalidInput",
            Error::Parse(_) => "ParseError",
        }
    }
}
