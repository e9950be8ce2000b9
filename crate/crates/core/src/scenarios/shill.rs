//! Auctioneer-employed shill bidders.
//!
//! A `(rho, L)`-shill joins with probability `rho` and then bids at every
//! opportunity until `L` bids have been placed in total. Legitimate players
//! take the shill for one more ordinary bidder (two with a second identity,
//! which lets the shill outbid itself). Shill bids earn nothing and a shill
//! win keeps the item.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{perceived_symmetric_beta, GroupProfile};
use crate::error::{invalid, Result};
use crate::markov::{BetaFn, GroupSide, Horizon, Pricing, TwoGroupChain};
use crate::model::{AuctionKind, AuctionSpec};
use crate::money::Cents;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShillPolicy {
    pub entry_prob: f64,
    pub bid_budget: u64,
    /// 1 or 2.
    pub identities: u8,
}

impl ShillPolicy {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.entry_prob) {
            return Err(invalid("rho", "entry probability must lie in [0, 1]"));
        }
        if !matches!(self.identities, 1 | 2) {
            return Err(invalid("identities", "a shill uses one or two identities"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShillOutcome {
    /// Expected auctioneer profit, averaged over shill entry.
    pub expected_profit: f64,
    /// Probability that the shill ends up holding the item.
    pub win_prob_shill: f64,
    /// Profit given that the shill entered.
    pub profit_with_shill: f64,
    pub expected_bids_with_shill: f64,
    /// Transient mass left when a fixed-price evolution was truncated.
    pub residual: f64,
}

/// The auction once the shill has entered: group A is the shill, group B
/// the `n` legitimate players.
pub fn shill_chain(spec: &AuctionSpec, policy: ShillPolicy) -> Result<TwoGroupChain> {
    spec.validate()?;
    policy.validate()?;
    let n = spec.population;
    let perceived = n + policy.identities as u32;
    let budget = policy.bid_budget;
    let shill: BetaFn = Arc::new(move |q, _| if q <= budget { 1.0 } else { 0.0 });
    let legit = perceived_symmetric_beta(spec.v(), spec.b(), perceived, spec.kind);

    let mut a = GroupSide::new(1, shill, Cents::ZERO);
    a.pays_price = false;
    a.rebids_when_leading = policy.identities == 2;
    let b = GroupSide::new(n, legit, spec.bid_fee);
    let mut chain = TwoGroupChain::new(a, b, Pricing::from(spec.kind));
    chain.time_homogeneous = false;
    chain.horizon = match spec.kind {
        AuctionKind::Ascending { .. } => {
            let profile = GroupProfile::truthful(spec, n);
            let legit_last = profile.last_bid_index(spec.kind).unwrap_or(0);
            Horizon::Bounded(legit_last.max(budget).max(1))
        }
        AuctionKind::FixedPrice { .. } => Horizon::Unbounded,
    };
    Ok(chain)
}

/// Expected auctioneer profit: legitimate fees plus the price paid by a
/// legitimate winner, less the value of the item handed over. Without a
/// shill the symmetric auction has zero expected profit, and a budget of
/// zero means the shill never acts.
pub fn shill_profit(spec: &AuctionSpec, policy: ShillPolicy) -> Result<ShillOutcome> {
    spec.validate()?;
    policy.validate()?;
    if policy.entry_prob == 0.0 || policy.bid_budget == 0 {
        return Ok(ShillOutcome {
            expected_profit: 0.0,
            win_prob_shill: 0.0,
            profit_with_shill: 0.0,
            expected_bids_with_shill: 0.0,
            residual: 0.0,
        });
    }
    let chain = shill_chain(spec, policy)?;
    let series = chain.evolve()?;
    let fees = series.fee_revenue(Cents::ZERO, spec.bid_fee);
    let price = series.price_revenue(chain.pricing, false, true);
    let [shill_win, legit_win] = series.win_probabilities();
    let with_shill = fees + price - spec.v() * legit_win;
    Ok(ShillOutcome {
        expected_profit: policy.entry_prob * with_shill,
        win_prob_shill: policy.entry_prob * shill_win,
        profit_with_shill: with_shill,
        expected_bids_with_shill: series.expected_bids(),
        residual: series.residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn policy(rho: f64, l: u64, identities: u8) -> ShillPolicy {
        ShillPolicy {
            entry_prob: rho,
            bid_budget: l,
            identities,
        }
    }

    #[test]
    fn inactive_shill_earns_nothing() {
        let spec = AuctionSpec::ascending_defaults();
        assert_eq!(
            shill_profit(&spec, policy(0.0, 30, 1))
                .unwrap()
                .expected_profit,
            0.0
        );
        assert_eq!(
            shill_profit(&spec, policy(1.0, 0, 1))
                .unwrap()
                .expected_profit,
            0.0
        );
    }

    #[test]
    fn profit_scales_with_entry() {
        let spec = AuctionSpec::ascending_defaults();
        let full = shill_profit(&spec, policy(1.0, 20, 1)).unwrap();
        let half = shill_profit(&spec, policy(0.5, 20, 1)).unwrap();
        assert!(full.expected_profit > 0.0);
        assert!((half.expected_profit - 0.5 * full.expected_profit).abs() < 1e-12);
    }

    #[test]
    fn second_identity_guarantees_budget() {
        let spec = AuctionSpec::ascending_defaults();
        let out = shill_profit(&spec, policy(1.0, 30, 2)).unwrap();
        assert!(out.expected_bids_with_shill >= 30.0);
        let chain = shill_chain(&spec, policy(1.0, 30, 2)).unwrap();
        for q in 2..=30 {
            assert_eq!(chain.row(q, crate::markov::Group::A).unwrap().absorb, 0.0);
        }
    }

    #[test]
    fn fixed_price_shill_truncates() {
        let spec = AuctionSpec::fixed_defaults();
        let out = shill_profit(&spec, policy(1.0, 10, 1)).unwrap();
        assert!(out.residual < 1e-12);
        assert!(out.expected_profit.is_finite());
        assert!((0.0..=1.0).contains(&out.win_prob_shill));
    }

    #[test]
    fn rejects_three_identities() {
        assert!(shill_profit(&AuctionSpec::fixed_defaults(), policy(1.0, 1, 3)).is_err());
    }
}
