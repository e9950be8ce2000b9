use thiserror::Error;

pub type Result<T, E = ModelError> = std::result::Result<T, E>;

/// Errors raised by the equilibrium, chain and scenario layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("bid index {q} is outside 1..={max}")]
    BidIndexOutOfRange { q: u64, max: u64 },

    #[error("operation requires {expected} auction")]
    WrongAuctionKind { expected: &'static str },

    #[error("group {0:?} has no members and cannot lead")]
    EmptyLeaderGroup(crate::markov::Group),

    #[error("chain never absorbs (I - Q is singular)")]
    NonAbsorbing,

    #[error("chain depends on the bid index; use the recurrence instead of the closed form")]
    TimeInhomogeneous,

    #[error("no bidder ever places the opening bid")]
    NeverSuccessful,

    #[error("no root: {0}")]
    NoRoot(String),

    #[error("no interior equilibrium: player {player} would need eta = {eta} > 0")]
    NoInteriorEquilibrium { player: usize, eta: f64 },
}

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> ModelError {
    ModelError::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
