use thiserror::Error;

/// Errors shared by the whole crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("non-finite value {value} returned by callback at point {point:?}")]
    NonFinite { value: f64, point: Vec<f64> },
    #[error("empty dyadic level range")]
    EmptyLevelRange,
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
