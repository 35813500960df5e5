use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("label map is not surjective onto 1..={0}")]
    NotSurjective(usize),
    #[error("arity mismatch: {0}")]
    Arity(String),
    #[error("complexity {found} exceeds the bound {bound}")]
    ComplexityExceeded { found: usize, bound: usize },
    #[error("the composite of consecutive boundaries is nonzero in degree {0}")]
    NotAComplex(usize),
    #[error("cochains over different coefficient rings")]
    MixedRings,
    #[error("the unfiltered model needs a truncation dimension")]
    TruncationRequired,
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
