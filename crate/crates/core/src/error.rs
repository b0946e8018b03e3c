use thiserror::Error;

/// Errors raised by construction, solving and verification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at evaluation point")]
    Pole,
    #[error("unsupported rank: {family} requires n >= {min}, got n = {n}")]
    UnsupportedRank { family: &'static str, min: usize, n: usize },
    #[error("unsupported type: {0}")]
    UnsupportedType(String),
    #[error("formula-only type: {0} has no module tables")]
    FormulaOnly(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("twist parameter must be nonzero")]
    ZeroTwist,
    #[error("mismatched Cartan data")]
    MismatchedData,
    #[error("fusion anchor ambiguous: highest weight space at {weight} has dimension {dim}")]
    FusionAnchorAmbiguous { weight: String, dim: usize },
    #[error("non-Schur tensor pair: hom space has dimension {0}")]
    NonSchur(usize),
    #[error("unexpected factor: {0}")]
    UnexpectedFactor(String),
    #[error("non-telescoping bracket ratio: {0}")]
    NonTelescoping(String),
    #[error("not a signed monomial: {0}")]
    NotSignedMonomial(String),
    #[error("inconsistent module data: {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
