use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("closure exceeded {cap} elements (infinite or too large group)")]
    CapExceeded { cap: usize },
    #[error("generators mix incompatible element kinds")]
    KindMismatch,
    #[error("search exceeded node budget of {budget}")]
    BudgetExceeded { budget: u64 },
    #[error("group is not finite (order exceeds {bound})")]
    NotFinite { bound: usize },
    #[error("group element does not preserve the fan")]
    NotFanPreserving,
    #[error("group order {order} is not a power of {prime}")]
    NotAPGroup { prime: u64, order: usize },
    #[error("group order {order} exceeds configured bound {bound}")]
    BoundExceeded { order: usize, bound: usize },
    #[error("group is not polyhedral")]
    NotPolyhedral,
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
