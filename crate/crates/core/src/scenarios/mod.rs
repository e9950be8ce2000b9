//! Asymmetric auction settings expressed as two-group chains.
//!
//! Most builders describe each group by a [`GroupProfile`]: the parameters
//! its members believe everyone shares. Members of an unaware group play the
//! symmetric equilibrium for those beliefs, so their per-player probability
//! solves `(1 - beta)^(n_hat - 1) = b_hat / (v_hat - price)`, with exponent
//! `n_hat` on the opening bid. The true collective probabilities then follow
//! from the true group sizes.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::markov::{BetaFn, GroupSide, Horizon, Pricing, TwoGroupChain};
use crate::model::{AuctionKind, AuctionSpec};
use crate::money::Cents;
use crate::numeric::per_player_beta;

pub mod chicken;
pub mod collusion;
pub mod committed;
pub mod fees;
pub mod full_info;
pub mod population;
pub mod shill;
pub mod valuation;

pub use chicken::{chicken_payoffs, ChickenPayoffs, ChickenStrategy};
pub use collusion::{collusion_chain, collusion_summary, CollusionSummary};
pub use committed::{committed_player_profit, CommittedOutcome, CommittedPolicy};
pub use fees::bidfee_asymmetry_chain;
pub use full_info::{full_info_equilibrium, solve_log_system, FullInfoEquilibrium};
pub use population::{
    ascending_underestimate_chain, ascending_underestimate_revenue, mixed_estimates_chain,
    mixed_estimates_revenue, point_belief_beta, uncertain_population_beta, uncertain_revenue,
    underestimate_chain, underestimate_uniform, PopulationBelief, UncertainBeta,
    UnderestimateResult,
};
pub use shill::{shill_chain, shill_profit, ShillOutcome, ShillPolicy};
pub use valuation::valuation_asymmetry_chain;

/// What the members of one group believe about the auction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GroupProfile {
    pub size: u32,
    pub perceived_n: u32,
    pub perceived_v: Cents,
    pub perceived_b: Cents,
    pub aware_of_split: bool,
}

impl GroupProfile {
    /// A group holding the true parameters.
    pub fn truthful(spec: &AuctionSpec, size: u32) -> Self {
        GroupProfile {
            size,
            perceived_n: spec.population,
            perceived_v: spec.value,
            perceived_b: spec.bid_fee,
            aware_of_split: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.size == 0 {
            return Err(invalid("size", "a group profile needs at least one member"));
        }
        if self.perceived_n < 2 {
            return Err(invalid("perceived_n", "must be at least 2"));
        }
        if self.perceived_b > self.perceived_v {
            return Err(invalid("perceived_b", "exceeds the perceived value"));
        }
        Ok(())
    }

    /// The symmetric equilibrium a member of this group plays.
    pub fn unaware_beta(&self, kind: AuctionKind) -> BetaFn {
        perceived_symmetric_beta(
            self.perceived_v.as_dollars(),
            self.perceived_b.as_dollars(),
            self.perceived_n,
            kind,
        )
    }

    /// Last bid index at which this group still bids, if bounded.
    pub(crate) fn last_bid_index(&self, kind: AuctionKind) -> Option<u64> {
        match kind {
            AuctionKind::Ascending { increment } => {
                let slack = self.perceived_v.0 - self.perceived_b.0;
                Some(if slack < 0 {
                    0
                } else {
                    (slack / increment.0) as u64 + 1
                })
            }
            AuctionKind::FixedPrice { .. } => None,
        }
    }
}

/// Per-player probability under the belief that `n` players all value the
/// item at `v` and pay `b` per bid.
pub(crate) fn perceived_symmetric_beta(v: f64, b: f64, n: u32, kind: AuctionKind) -> BetaFn {
    Arc::new(move |q, leader| {
        let non_bid = perceived_non_bid(v, b, kind, q);
        let players = if leader.is_none() { n } else { n - 1 };
        per_player_beta(non_bid, players as f64).clamp(0.0, 1.0)
    })
}

/// `b / (worth of winning with bid q)`, capped at one.
pub(crate) fn perceived_non_bid(v: f64, b: f64, kind: AuctionKind, q: u64) -> f64 {
    let worth = match kind {
        AuctionKind::Ascending { increment } => {
            v - increment.as_dollars() * q.saturating_sub(1) as f64
        }
        AuctionKind::FixedPrice { price } => v - price.as_dollars(),
    };
    if worth <= b {
        1.0
    } else {
        b / worth
    }
}

/// Horizon an ascending chain needs so that no group still wants to bid.
pub(crate) fn horizon_for(kind: AuctionKind, last_bids: &[Option<u64>]) -> Horizon {
    match kind {
        AuctionKind::Ascending { .. } => Horizon::Bounded(
            last_bids
                .iter()
                .flatten()
                .copied()
                .max()
                .unwrap_or(0)
                .max(1),
        ),
        AuctionKind::FixedPrice { .. } => Horizon::Unbounded,
    }
}

/// Chain in which both groups play symmetric equilibria for their own
/// beliefs. Each group is charged the true fee.
pub fn unaware_chain(
    spec: &AuctionSpec,
    a: GroupProfile,
    b: GroupProfile,
) -> Result<TwoGroupChain> {
    spec.validate()?;
    a.validate()?;
    b.validate()?;
    if a.size + b.size != spec.population {
        return Err(invalid(
            "size",
            format!(
                "group sizes {} + {} do not add up to the population {}",
                a.size, b.size, spec.population
            ),
        ));
    }
    let mut chain = TwoGroupChain::new(
        GroupSide::new(a.size, a.unaware_beta(spec.kind), spec.bid_fee),
        GroupSide::new(b.size, b.unaware_beta(spec.kind), spec.bid_fee),
        Pricing::from(spec.kind),
    );
    chain.horizon = horizon_for(
        spec.kind,
        &[a.last_bid_index(spec.kind), b.last_bid_index(spec.kind)],
    );
    Ok(chain)
}

/// The full-information symmetric auction split into two identical groups.
pub fn symmetric_chain(spec: &AuctionSpec, k: u32) -> Result<TwoGroupChain> {
    if k > spec.population {
        return Err(invalid("k", "group A cannot exceed the population"));
    }
    spec.validate()?;
    let beta = GroupProfile::truthful(spec, 1).unaware_beta(spec.kind);
    let mut chain = TwoGroupChain::new(
        GroupSide::new(k, beta.clone(), spec.bid_fee),
        GroupSide::new(spec.population - k, beta, spec.bid_fee),
        Pricing::from(spec.kind),
    );
    let last = GroupProfile::truthful(spec, 1).last_bid_index(spec.kind);
    chain.horizon = horizon_for(spec.kind, &[last]);
    Ok(chain)
}

pub(crate) fn require_fixed(spec: &AuctionSpec) -> Result<()> {
    if spec.is_fixed_price() {
        Ok(())
    } else {
        Err(crate::ModelError::WrongAuctionKind {
            expected: "a fixed-price",
        })
    }
}

pub(crate) fn require_ascending(spec: &AuctionSpec) -> Result<()> {
    if spec.is_fixed_price() {
        Err(crate::ModelError::WrongAuctionKind {
            expected: "an ascending-price",
        })
    } else {
        Ok(())
    }
}

/// Expected revenue of a chain given at least one bid, through the closed
/// form when the chain is time-homogeneous and the recurrence otherwise.
pub fn chain_revenue(chain: &TwoGroupChain) -> Result<f64> {
    if chain.time_homogeneous && matches!(chain.horizon, Horizon::Unbounded) {
        Ok(chain.absorption_closed_form()?.expected_revenue)
    } else {
        let series = chain.evolve()?;
        Ok(crate::markov::chain_revenue_from_series(chain, &series))
    }
}

/// Win probabilities `(P(W_A), P(W_B))` given at least one bid.
pub fn chain_win_probabilities(chain: &TwoGroupChain) -> Result<[f64; 2]> {
    if chain.time_homogeneous && matches!(chain.horizon, Horizon::Unbounded) {
        Ok(chain.absorption_closed_form()?.unconditional_w)
    } else {
        Ok(chain.evolve()?.win_probabilities())
    }
}

/// Expected number of bids given at least one bid.
pub fn chain_expected_bids(chain: &TwoGroupChain) -> Result<f64> {
    if chain.time_homogeneous && matches!(chain.horizon, Horizon::Unbounded) {
        Ok(chain.absorption_closed_form()?.expected_bids)
    } else {
        Ok(chain.evolve()?.expected_bids())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_split_reproduces_value() {
        let spec = AuctionSpec::fixed_defaults();
        for k in [0, 1, 25, 49, 50] {
            let r = chain_revenue(&symmetric_chain(&spec, k).unwrap()).unwrap();
            assert!((r - 100.0).abs() < 1e-8, "k={k}: {r}");
        }
    }

    #[test]
    fn symmetric_ascending_stays_below_bound() {
        let spec = AuctionSpec::ascending_defaults();
        let r = chain_revenue(&symmetric_chain(&spec, 10).unwrap()).unwrap();
        assert!((r - 100.0).abs() < 1e-6, "{r}");
        assert!(r <= 496.25);
    }

    #[test]
    fn sizes_must_add_up() {
        let spec = AuctionSpec::fixed_defaults();
        let a = GroupProfile::truthful(&spec, 10);
        let b = GroupProfile::truthful(&spec, 10);
        assert!(unaware_chain(&spec, a, b).is_err());
    }
}
