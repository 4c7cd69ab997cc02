use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid setup: {0}")]
    InvalidSetup(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("weight {0} lies on a wall")]
    NonGeneric(String),
    #[error("segment passes through the intersection of two walls at t = {0}")]
    DegeneratePath(String),
    #[error("unsupported cone: {0}")]
    UnsupportedCone(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
