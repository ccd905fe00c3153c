use thiserror::Error;

/// Errors raised by the library.
///
/// `Validation` covers malformed input (files, facet lists), `Domain` a
/// well-formed input outside an operation's precondition, and `Invariant` a
/// failed internal cross-check. The last one should never fire; when it does
/// it means a verified identity did not hold.
#[derive(Debug, Error)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invariant violation: {0}")]
    Invariant(String),

    #[error("enumeration budget exceeded: {needed} candidate subsets > budget {budget}")]
    Budget { needed: u128, budget: u64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

macro_rules! domain {
    ($($arg:tt)*) => { $crate::error::Error::Domain(format!($($arg)*)) };
}

macro_rules! invariant {
    ($($arg:tt)*) => { $crate::error::Error::Invariant(format!($($arg)*)) };
}

pub(crate) use domain;
pub(crate) use invariant;
