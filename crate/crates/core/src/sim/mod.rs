//! Bid-by-bid Monte Carlo simulation.
//!
//! Every round, each eligible player decides independently whether to bid;
//! the new leader is drawn uniformly among those who did and pays their fee.
//! The auction ends after the first round without a bid. Identical players
//! sharing a rule are sampled as a block: the number of bidders among `m`
//! such players is `Binomial(m, beta)` and the chosen bidder is uniform over
//! the eligible members, which has the same law as flipping every coin.

mod engine;
mod policy;
mod rng;

pub use engine::{
    estimate, estimate_statistic, simulate_one, simulate_with, AuctionTrial, EstimateResult,
    StatSummary, DEFAULT_MAX_BIDS,
};
pub use policy::{BidContext, BidRule, PlayerClass, Population, Role};
pub use rng::{trial_rng, TrialRng};
