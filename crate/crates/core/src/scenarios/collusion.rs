//! A coalition that never bids against its own members.
//!
//! Outsiders see `n` identical players and bid accordingly. Coalition
//! members share costs and proceeds, so they sit out while one of them
//! leads and otherwise bid like everybody else.

use std::sync::Arc;

use serde::Serialize;

use super::{require_fixed, GroupProfile};
use crate::error::{invalid, Result};
use crate::markov::{BetaFn, Group, GroupSide, Pricing, TieRule, TwoGroupChain};
use crate::model::AuctionSpec;
use crate::scenarios::chain_revenue;

pub fn collusion_chain(spec: &AuctionSpec, k: u32, tie_rule: TieRule) -> Result<TwoGroupChain> {
    require_fixed(spec)?;
    spec.validate()?;
    let n = spec.population;
    if k < 2 || k >= n {
        return Err(invalid("k", format!("coalition size must lie in 2..{n}")));
    }
    let honest = GroupProfile::truthful(spec, n - k).unaware_beta(spec.kind);
    let inner = honest.clone();
    let coalition: BetaFn = Arc::new(move |q, leader| {
        if leader == Some(Group::A) {
            0.0
        } else {
            inner(q, leader)
        }
    });
    let mut chain = TwoGroupChain::new(
        GroupSide::new(k, coalition, spec.bid_fee),
        GroupSide::new(n - k, honest, spec.bid_fee),
        Pricing::from(spec.kind),
    );
    chain.tie_rule = tie_rule;
    Ok(chain)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CollusionSummary {
    pub k: u32,
    pub revenue: f64,
    pub coalition_win: f64,
    pub outsiders_win: f64,
    /// Coalition win probability over that of one specific outsider.
    pub win_ratio: f64,
    pub expected_bids: f64,
}

pub fn collusion_summary(
    spec: &AuctionSpec,
    k: u32,
    tie_rule: TieRule,
) -> Result<CollusionSummary> {
    let chain = collusion_chain(spec, k, tie_rule)?;
    let s = chain.absorption_closed_form()?;
    let outsiders = spec.population - k;
    Ok(CollusionSummary {
        k,
        revenue: chain_revenue(&chain)?,
        coalition_win: s.unconditional_w[0],
        outsiders_win: s.unconditional_w[1],
        win_ratio: s.unconditional_w[0] / (s.unconditional_w[1] / outsiders as f64),
        expected_bids: s.expected_bids,
    })
}
