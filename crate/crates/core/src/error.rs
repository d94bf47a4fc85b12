use thiserror::Error;

use crate::qcore::HalfExp;

/// Errors raised by the engine. Verification failures are reported through
/// report types, not through this enum.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QError {
    #[error("series is not invertible over the integers: constant term is {0}")]
    NotInvertible(String),

    #[error("vanishing factor in infinite product: {0}")]
    VanishingFactor(String),

    #[error("q -> 1/q reversal needs an exact polynomial, got a series truncated at q^({0})")]
    ReverseOfSeries(HalfExp),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid rho specialization: {0}")]
    InvalidRho(String),

    #[error("relative parameters differ: pair has eta={pair}, conjugate pair has eta={conjugate}")]
    EtaMismatch { pair: u32, conjugate: u32 },

    #[error("tail not certified: {0}")]
    TailUncertified(String),

    #[error("exponent {0} is not integral")]
    NonIntegralExponent(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown catalog label `{0}`")]
    UnknownLabel(String),

    #[error("catalog entry `{label}` failed verification at L={l}")]
    CatalogVerification { label: String, l: usize },

    #[error("data error: {0}")]
    Data(String),
}

pub type Result<T> = std::result::Result<T, QError>;
