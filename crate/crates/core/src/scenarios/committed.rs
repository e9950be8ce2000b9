//! A single player committed to the buy-it-now backstop.
//!
//! The committed player may buy the item at `r = alpha * v` with bid fees
//! credited, so after spending `delta` the backstop costs `r - delta`. They
//! bid at every opportunity while winning with the next bid stays cheaper
//! than the backstop, i.e. while `delta + b + price < r`. The other `n - 1`
//! players play the symmetric equilibrium for `n` players. The chain state
//! is the leader plus the number of bids the committed player has paid for.

use serde::{Deserialize, Serialize};

use super::perceived_symmetric_beta;
use crate::error::{invalid, Result};
use crate::markov::{Group, MAX_STEPS, TRUNCATION_MASS};
use crate::model::AuctionSpec;
use crate::numeric::binomial_pmf;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CommittedPolicy {
    /// Retail multiplier: `r = alpha * v`.
    pub alpha: f64,
}

impl CommittedPolicy {
    pub fn retail(&self, spec: &AuctionSpec) -> f64 {
        self.alpha * spec.v()
    }

    /// Whether the committed player places bid `q` after paying for `paid`
    /// earlier bids.
    pub fn bids(&self, spec: &AuctionSpec, q: u64, paid: u64) -> bool {
        let b = spec.b();
        paid as f64 * b + b + spec.final_price(q) < self.retail(spec)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CommittedOutcome {
    pub player_profit: f64,
    pub auctioneer_profit: f64,
    pub committed_win_prob: f64,
    pub expected_bids: f64,
    /// Worst profit the committed player can realise on any reachable path.
    pub worst_player_profit: f64,
    /// True when `alpha <= 1` and the symmetric baseline was returned.
    pub baseline: bool,
}

/// Expected profits for the committed player and the auctioneer.
///
/// A committed win pays `v - delta - price` to the player and
/// `fees + price - v` to the auctioneer. A committed loss ends with a
/// backstop purchase: the player nets `v - r`, the auctioneer additionally
/// collects `r - delta` and hands over a second item worth `v`.
pub fn committed_player_profit(
    spec: &AuctionSpec,
    policy: CommittedPolicy,
) -> Result<CommittedOutcome> {
    spec.validate()?;
    if !policy.alpha.is_finite() || policy.alpha <= 0.0 {
        return Err(invalid("alpha", "must be positive"));
    }
    if policy.alpha <= 1.0 {
        return Ok(CommittedOutcome {
            player_profit: 0.0,
            auctioneer_profit: 0.0,
            committed_win_prob: 0.0,
            expected_bids: super::chain_expected_bids(&super::symmetric_chain(spec, 0)?)?,
            worst_player_profit: 0.0,
            baseline: true,
        });
    }
    let n = spec.population;
    let v = spec.v();
    let b = spec.b();
    let r = policy.retail(spec);
    let regular = perceived_symmetric_beta(v, b, n, spec.kind);

    // c ranges over bids paid for by the committed player; it can never
    // reach r / b because each paid bid keeps delta + b below r.
    let max_paid = (r / b).ceil() as usize + 1;
    let mut lead_c = vec![0.0; max_paid + 1];
    let mut lead_r = vec![0.0; max_paid + 1];

    let mut acc = Accumulator::new(spec, r);

    // Opening bid: everybody eligible.
    let pb = binomial_pmf(n - 1, regular(1, None));
    if policy.bids(spec, 1, 0) {
        let c_share = lottery_share(&pb);
        lead_c[1] = c_share;
        lead_r[0] = 1.0 - c_share;
    } else {
        if pb[0] >= 1.0 {
            return Err(crate::ModelError::NeverSuccessful);
        }
        lead_r[0] = 1.0;
    }
    let mut q = 1u64;
    acc.bids += 1.0;
    loop {
        let transient: f64 = lead_c.iter().chain(lead_r.iter()).sum();
        if transient < TRUNCATION_MASS || q >= MAX_STEPS {
            acc.residual = transient;
            break;
        }
        let next = q + 1;
        let beta = regular(next, Some(Group::B));
        let behind_r = binomial_pmf(n - 2, beta);
        let behind_c = binomial_pmf(n - 1, beta);
        let mut new_c = vec![0.0; max_paid + 1];
        let mut new_r = vec![0.0; max_paid + 1];
        for c in 0..=max_paid {
            // Committed player leads: only regulars may respond.
            let pc = lead_c[c];
            if pc > 0.0 {
                acc.end(q, c, pc * behind_c[0], Group::A);
                new_r[c] += pc * (1.0 - behind_c[0]);
            }
            let pr = lead_r[c];
            if pr > 0.0 {
                if policy.bids(spec, next, c as u64) {
                    let share = lottery_share(&behind_r);
                    new_c[c + 1] += pr * share;
                    new_r[c] += pr * (1.0 - share);
                } else {
                    acc.end(q, c, pr * behind_r[0], Group::B);
                    new_r[c] += pr * (1.0 - behind_r[0]);
                }
            }
        }
        lead_c = new_c;
        lead_r = new_r;
        q = next;
        acc.bids += lead_c.iter().chain(lead_r.iter()).sum::<f64>();
    }
    Ok(acc.finish())
}

/// Chance that one sure bidder wins the lottery against `Bin(m, beta)`
/// others: `sum_j P(j) / (1 + j)`.
fn lottery_share(others: &[f64]) -> f64 {
    others
        .iter()
        .enumerate()
        .map(|(j, p)| p / (1 + j) as f64)
        .sum()
}

struct Accumulator {
    v: f64,
    b: f64,
    r: f64,
    spec: AuctionSpec,
    player: f64,
    auctioneer: f64,
    committed_win: f64,
    bids: f64,
    worst: f64,
    residual: f64,
}

impl Accumulator {
    fn new(spec: &AuctionSpec, r: f64) -> Self {
        Accumulator {
            v: spec.v(),
            b: spec.b(),
            r,
            spec: *spec,
            player: 0.0,
            auctioneer: 0.0,
            committed_win: 0.0,
            bids: 0.0,
            worst: f64::INFINITY,
            residual: 0.0,
        }
    }

    /// The auction ends after `q` bids with `paid` committed bids and the
    /// given winner (A is the committed player).
    fn end(&mut self, q: u64, paid: usize, mass: f64, winner: Group) {
        if mass <= 0.0 {
            return;
        }
        let price = self.spec.final_price(q);
        let delta = paid as f64 * self.b;
        let fees = q as f64 * self.b;
        let (player, auctioneer) = match winner {
            Group::A => (self.v - delta - price, fees + price - self.v),
            Group::B => (
                self.v - self.r,
                fees + price - self.v + (self.r - delta) - self.v,
            ),
        };
        if winner == Group::A {
            self.committed_win += mass;
        }
        self.player += mass * player;
        self.auctioneer += mass * auctioneer;
        self.worst = self.worst.min(player);
    }

    fn finish(self) -> CommittedOutcome {
        CommittedOutcome {
            player_profit: self.player,
            auctioneer_profit: self.auctioneer,
            committed_win_prob: self.committed_win,
            expected_bids: self.bids,
            worst_player_profit: self.worst,
            baseline: false,
        }
    }
}
