use thiserror::Error;

use crate::classify::AnalysisReport;

#[derive(Debug, Error)]
pub enum HibiError {
    #[error("malformed poset document: {0}")]
    Json(#[from] serde_json::Error),

    #[error("invalid element name {0:?}: names must match [A-Za-z0-9_]+")]
    InvalidName(String),

    #[error("element {0:?} is listed more than once")]
    DuplicateElement(String),

    #[error("cover ({0:?}, {1:?}) refers to an unknown element")]
    UnknownElementInCover(String, String),

    #[error("cover relation contains a cycle through {0:?}")]
    CycleDetected(String),

    #[error("no unique minimal element: {0}")]
    NoUniqueMinimal(String),

    #[error("cover ({0:?}, {1:?}) is implied by other covers; give a transitively reduced cover list")]
    NonReducedCover(String, String),

    #[error("unknown element {0:?}")]
    UnknownElement(String),

    #[error("{0:?} is not below {1:?}")]
    NotComparable(String, String),

    #[error("subset is empty")]
    EmptySubset,

    #[error("valuation does not match the poset: {0}")]
    ValuationShape(String),

    #[error("valuation is not in T(P): {0}")]
    NotInT(String),

    #[error("valuation is not a minimal element of T(P)")]
    NotMinimal,

    #[error("set is not a nonempty poset ideal of P: {0}")]
    NotAnIdeal(String),

    #[error("gap between {0:?} and {1:?} is smaller than 2")]
    GapTooSmall(String, String),

    #[error("sequence does not satisfy condition N: {0}")]
    NotConditionN(String),

    #[error("r_max = {rmax} is smaller than the sequence value {value}")]
    RmaxTooSmall { rmax: i64, value: i64 },

    #[error("{what} exceeds the budget of {limit}; raise it with {hint}")]
    SizeGuard {
        what: String,
        limit: u64,
        hint: String,
    },

    #[error("cross-check failed: {}", .0.failed_checks().join(", "))]
    Inconsistent(Box<AnalysisReport>),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, HibiError>;
