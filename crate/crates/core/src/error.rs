use thiserror::Error;

/// Errors raised by the library. The variant name is the stable identifier
/// surfaced by the command-line front end.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("operator is not Hermitian (deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },
    #[error("operator is not unitary (deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimMismatch { expected: usize, found: usize },
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),
    #[error("variable is not permissible under the group action")]
    NotPermissible,
    #[error("value action does not permute the eigenvalues: {0}")]
    NotPermutation(String),
    #[error("variable `{0}` is not maximal (some eigenspace has rank > 1)")]
    NotMaximal(String),
    #[error("operator is not a projector (deviation {deviation:.3e})")]
    NotProjector { deviation: f64 },
    #[error("operator is not an effect (spectrum outside [0, 1] by {deviation:.3e})")]
    NotEffect { deviation: f64 },
    #[error("parameter values do not match the variable's values: {0}")]
    ValueMismatch(String),
    #[error("invalid probability distribution: {0}")]
    BadDistribution(String),
    #[error(
        "branch probability {probability:.3e} is too small to define a post-measurement state"
    )]
    ZeroProbabilityBranch { probability: f64 },
    #[error("Kraus operator {index} is not diagonal (off-diagonal mass {deviation:.3e})")]
    NotDiagonal { index: usize, deviation: f64 },
    #[error("prior times likelihood vanishes everywhere")]
    ZeroEvidence,
    #[error("not a state vector: {0}")]
    NotNormalized(String),
    #[error("not a density operator: {0}")]
    NotDensity(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Variant name, e.g. `"NotHermitian"`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotHermitian { .. } => "NotHermitian",
            Error::NotUnitary { .. } => "NotUnitary",
            Error::DimMismatch { .. } => "DimMismatch",
            Error::SpaceMismatch(_) => "SpaceMismatch",
            Error::NotPermissible => "NotPermissible",
            Error::NotPermutation(_) => "NotPermutation",
            Error::NotMaximal(_) => "NotMaximal",
            Error::NotProjector { .. } => "NotProjector",
            Error::NotEffect { .. } => "NotEffect",
            Error::ValueMismatch(_) => "ValueMismatch",
            Error::BadDistribution(_) => "BadDistribution",
            Error::ZeroProbabilityBranch { .. } => "ZeroProbabilityBranch",
            Error::NotDiagonal { .. } => "NotDiagonal",
            Error::ZeroEvidence => "ZeroEvidence",
            Error::NotNormalized(_) => "NotNormalized",
            Error::NotDensity(_) => "NotDensity",
            Error::InvalidGroup(_) => "InvalidGroup",
            Error::InvalidInput(_) => "InvalidInput",
            Error::Parse(_) => "Parse",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
