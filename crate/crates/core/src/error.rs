use thiserror::Error;

/// Errors raised by evaluation, continuation and parsing routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LerchError {
    #[error("branch cut violation: {0}")]
    CutViolation(String),
    #[error("gamma function pole at nonpositive integer {0}")]
    PoleAtNonpositiveInteger(i64),
    #[error("series diverges: {0}")]
    DivergentSeries(String),
    #[error("no convergence: {0}")]
    NonConvergence(String),
    #[error("contour passes within clearance of an integrand pole at t = {0}")]
    ContourHitsPole(String),
    #[error("point outside the region of this method: {0}")]
    InvalidRegion(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("differentiation circle leaves the holomorphy domain: {0}")]
    DerivativeCircleLeavesDomain(String),
    #[error("raising operator undefined at s = 0")]
    SZero,
    #[error("parse error: {0}")]
    Parse(String),
}

impl LerchError {
    /// Stable machine-readable kind name.
    pub fn kind(&self) -> &'static str {
        match self {
            LerchError::CutViolation(_) => "CutViolation",
            LerchError::PoleAtNonpositiveInteger(_) => "PoleAtNonpositiveInteger",
            LerchError::DivergentSeries(_) => "DivergentSeries",
            LerchError::NonConvergence(_) => "NonConvergence",
            LerchError::ContourHitsPole(_) => "ContourHitsPole",
            LerchError::InvalidRegion(_) => "InvalidRegion",
            LerchError::InvalidPoint(_) => "InvalidPoint",
            LerchError::DerivativeCircleLeavesDomain(_) => "DerivativeCircleLeavesDomain",
            LerchError::SZero => "SZero",
            LerchError::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, LerchError>;
