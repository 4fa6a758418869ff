use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the embedding, duality and estimation routines.
///
/// Variants that refer to a single point carry the zero-based record index
/// within the dataset being processed.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("record {index}: non-finite coordinate")]
    NonFinite { index: usize },

    #[error("duplicate id {id}")]
    DuplicateId { id: usize },

    #[error("invalid embedding direction: {0}")]
    InvalidDirection(String),

    #[error("scale must be positive and finite, got {0}")]
    InvalidScale(f64),

    #[error("record {index}: point lies at the inversion pole -v")]
    PointAtSouthPole { index: usize },

    #[error("record {index}: point is not on the unit sphere (norm {norm})")]
    NotOnSphere { index: usize, norm: f64 },

    #[error("cap contains the inversion pole -v (b + <p,v> = {margin})")]
    CapContainsSouthPole { margin: f64 },

    #[error("degenerate cap: bias {b} outside (-1, 1)")]
    DegenerateCap { b: f64 },

    #[error("invalid cap direction: {0}")]
    InvalidCapDirection(String),

    #[error("invalid ball: {0}")]
    InvalidBall(String),

    #[error("short axis undefined: v has no component in the data space (use cap_to_ball)")]
    AxisUndefined,

    #[error("dataset is empty")]
    EmptyDataset,

    #[error("need at least 2 non-zero points, got {got}")]
    TooFewPoints { got: usize },

    #[error("all sampled cosines are zero; ABID is undefined")]
    AllCosinesZero,

    #[error("record {index}: zero vector")]
    ZeroVector { index: usize },

    #[error("embedded cosine is zero; ratio undefined")]
    ZeroEmbeddedCosine,

    #[error("mean vector is zero; no direction to align")]
    ZeroMean,

    #[error("k = {k} exceeds base size {n}")]
    KTooLarge { k: usize, n: usize },

    #[error("misaligned inputs: {0}")]
    Misaligned(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// True for errors caused by the inversion singularity or an undefined
    /// quotient, as opposed to malformed input.
    pub fn is_singularity(&self) -> bool {
        matches!(
            self,
            Error::PointAtSouthPole { .. }
                | Error::CapContainsSouthPole { .. }
                | Error::AxisUndefined
                | Error::AllCosinesZero
                | Error::ZeroEmbeddedCosine
                | Error::ZeroMean
        )
    }

    /// Short stable name of the variant, used by front ends when reporting.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NonFinite { .. } => "NonFinite",
            Error::DuplicateId { .. } => "DuplicateId",
            Error::InvalidDirection(_) => "InvalidDirection",
            Error::InvalidScale(_) => "InvalidScale",
            Error::PointAtSouthPole { .. } => "PointAtSouthPole",
            Error::NotOnSphere { .. } => "NotOnSphere",
            Error::CapContainsSouthPole { .. } => "CapContainsSouthPole",
            Error::DegenerateCap { .. } => "DegenerateCap",
            Error::InvalidCapDirection(_) => "InvalidCapDirection",
            Error::InvalidBall(_) => "InvalidBall",
            Error::AxisUndefined => "AxisUndefined",
            Error::EmptyDataset => "EmptyDataset",
            Error::TooFewPoints { .. } => "TooFewPoints",
            Error::AllCosinesZero => "AllCosinesZero",
            Error::ZeroVector { .. } => "ZeroVector",
            Error::ZeroEmbeddedCosine => "ZeroEmbeddedCosine",
            Error::ZeroMean => "ZeroMean",
            Error::KTooLarge { .. } => "KTooLarge",
            Error::Misaligned(_) => "Misaligned",
            Error::InvalidParameter(_) => "InvalidParameter",
        }
    }
}
