//! The symmetric pay-per-bid model.
//!
//! Every bidder shares the same value `v`, bid fee `b` and population `n`.
//! Each bid costs `b`; in an ascending auction it also raises the price by
//! `s`, in a fixed-price auction the winner pays a preset `p`. Equilibrium
//! bid probabilities are pinned down by indifference: the expected gain from
//! placing any bid equals its fee.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, ModelError, Result};
use crate::money::Cents;
use crate::numeric::per_player_beta;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AuctionKind {
    Ascending {
        increment: Cents,
    },
    /// `price == 0` is the 100%-off variant.
    FixedPrice {
        price: Cents,
    },
}

/// True auction parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuctionSpec {
    pub value: Cents,
    pub bid_fee: Cents,
    pub population: u32,
    pub kind: AuctionKind,
}

/// Ordinal of a bid within an auction, starting at 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BidIndex(pub u64);

impl BidIndex {
    pub const FIRST: BidIndex = BidIndex(1);

    pub fn new(q: u64) -> Result<Self> {
        if q == 0 {
            return Err(invalid("q", "bid indices start at 1"));
        }
        Ok(BidIndex(q))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

/// Number of rational bids in an auction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MaxBids {
    /// `Q = floor((v - b) / s)`; bids `1..=Q+1` may be placed.
    Bounded(u64),
    Unbounded,
}

/// Collective and per-player bid probability at one bid index.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EquilibriumPoint {
    pub mu: f64,
    pub beta: f64,
    pub first_bid: bool,
}

impl AuctionSpec {
    pub fn ascending(value: Cents, bid_fee: Cents, increment: Cents, population: u32) -> Self {
        AuctionSpec {
            value,
            bid_fee,
            population,
            kind: AuctionKind::Ascending { increment },
        }
    }

    pub fn fixed(value: Cents, bid_fee: Cents, price: Cents, population: u32) -> Self {
        AuctionSpec {
            value,
            bid_fee,
            population,
            kind: AuctionKind::FixedPrice { price },
        }
    }

    /// `n = 50`, `v = $100`, `b = $1`, `p = $0`.
    pub fn fixed_defaults() -> Self {
        Self::fixed(
            Cents::from_dollars(100),
            Cents::from_dollars(1),
            Cents::ZERO,
            50,
        )
    }

    /// `n = 50`, `v = $100`, `b = $1`, `s = $0.25`.
    pub fn ascending_defaults() -> Self {
        Self::ascending(
            Cents::from_dollars(100),
            Cents::from_dollars(1),
            Cents(25),
            50,
        )
    }

    pub fn validate(&self) -> Result<()> {
        if self.value.0 < 0 {
            return Err(invalid("value", "must be nonnegative"));
        }
        if self.bid_fee.0 <= 0 {
            return Err(invalid("bid_fee", "must be positive"));
        }
        if self.bid_fee > self.value {
            return Err(invalid(
                "bid_fee",
                format!(
                    "fee {} exceeds value {}: no bid is rational",
                    self.bid_fee, self.value
                ),
            ));
        }
        if self.population < 2 {
            return Err(invalid("population", "need at least two players"));
        }
        match self.kind {
            AuctionKind::Ascending { increment } if increment.0 <= 0 => {
                Err(invalid("increment", "must be positive"))
            }
            AuctionKind::FixedPrice { price } if price.0 < 0 => {
                Err(invalid("price", "must be nonnegative"))
            }
            AuctionKind::FixedPrice { price } if price >= self.value => Err(invalid(
                "price",
                format!("fixed price {price} must be below the value {}", self.value),
            )),
            _ => Ok(()),
        }
    }

    pub fn is_fixed_price(&self) -> bool {
        matches!(self.kind, AuctionKind::FixedPrice { .. })
    }

    pub fn v(&self) -> f64 {
        self.value.as_dollars()
    }

    pub fn b(&self) -> f64 {
        self.bid_fee.as_dollars()
    }

    pub fn n(&self) -> u32 {
        self.population
    }

    /// Price the winner pays when the auction ends after `bids` bids.
    pub fn final_price(&self, bids: u64) -> f64 {
        match self.kind {
            AuctionKind::Ascending { increment } => increment.as_dollars() * bids as f64,
            AuctionKind::FixedPrice { price } => price.as_dollars(),
        }
    }

    /// Net worth of winning with bid `q` for a bidder valuing the item at
    /// `value`: `value - s(q-1)` for ascending auctions (the price standing
    /// before the bid), `value - p` for fixed-price ones.
    pub fn net_worth(&self, value: f64, q: u64) -> f64 {
        match self.kind {
            AuctionKind::Ascending { increment } => {
                value - increment.as_dollars() * (q.saturating_sub(1)) as f64
            }
            AuctionKind::FixedPrice { price } => value - price.as_dollars(),
        }
    }

    pub fn max_bids(&self) -> Result<MaxBids> {
        max_bids(self)
    }
}

/// `Q = floor((v - b) / s)` for ascending auctions; fixed-price auctions are
/// unbounded. Computed in integer cents.
pub fn max_bids(spec: &AuctionSpec) -> Result<MaxBids> {
    if spec.bid_fee > spec.value {
        return Err(invalid(
            "bid_fee",
            format!(
                "fee {} exceeds value {}: no bid is rational",
                spec.bid_fee, spec.value
            ),
        ));
    }
    match spec.kind {
        AuctionKind::Ascending { increment } => {
            if increment.0 <= 0 {
                return Err(invalid("increment", "must be positive"));
            }
            Ok(MaxBids::Bounded(
                ((spec.value.0 - spec.bid_fee.0) / increment.0) as u64,
            ))
        }
        AuctionKind::FixedPrice { .. } => Ok(MaxBids::Unbounded),
    }
}

/// Probability that bid `q` gets placed by someone, given bid `q-1` was.
///
/// Ascending: `1 - b / (v - s(q-1))`, zero past the last rational bid.
/// Fixed price: `1 - b / (v - p)` at every index.
pub fn symmetric_mu(spec: &AuctionSpec, q: BidIndex) -> Result<f64> {
    Ok(1.0 - symmetric_non_bid(spec, q)?)
}

/// `1 - mu_q`, computed directly so that later logarithms keep precision.
fn symmetric_non_bid(spec: &AuctionSpec, q: BidIndex) -> Result<f64> {
    spec.validate()?;
    if q.0 == 0 {
        return Err(invalid("q", "bid indices start at 1"));
    }
    if let MaxBids::Bounded(max) = max_bids(spec)? {
        if q.0 > max + 1 {
            return Err(ModelError::BidIndexOutOfRange {
                q: q.0,
                max: max + 1,
            });
        }
    }
    let worth = spec.net_worth(spec.v(), q.0);
    if worth <= 0.0 {
        return Ok(1.0);
    }
    Ok((spec.b() / worth).min(1.0))
}

/// Per-player probability solving `(1 - beta)^m = 1 - mu_q`, with `m = n`
/// for the opening bid (nobody leads yet) and `m = n - 1` afterwards.
pub fn symmetric_beta(spec: &AuctionSpec, q: BidIndex, first_bid: bool) -> Result<f64> {
    let non_bid = symmetric_non_bid(spec, q)?;
    let players = if first_bid {
        spec.population
    } else {
        spec.population - 1
    };
    Ok(per_player_beta(non_bid, players as f64).clamp(0.0, 1.0))
}

pub fn symmetric_equilibrium(spec: &AuctionSpec, q: BidIndex) -> Result<EquilibriumPoint> {
    let first_bid = q == BidIndex::FIRST;
    Ok(EquilibriumPoint {
        mu: symmetric_mu(spec, q)?,
        beta: symmetric_beta(spec, q, first_bid)?,
        first_bid,
    })
}

/// Expected auctioneer revenue in dollars.
///
/// Conditioned on at least one bid the revenue is `v`. Unconditionally it is
/// `v * (1 - P(no bid))` with `P(no bid) = b / (v - p)`, which is exactly
/// `v - b` for ascending and 100%-off auctions.
pub fn symmetric_expected_revenue(spec: &AuctionSpec, conditioned_on_success: bool) -> Result<f64> {
    spec.validate()?;
    if conditioned_on_success {
        return Ok(spec.v());
    }
    match spec.kind {
        AuctionKind::FixedPrice { price } if price.0 > 0 => {
            let no_bid = symmetric_non_bid(spec, BidIndex::FIRST)?;
            Ok(spec.v() * (1.0 - no_bid))
        }
        _ => Ok((spec.value - spec.bid_fee).as_dollars()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn asc(v: i64, b: i64, s: i64) -> AuctionSpec {
        AuctionSpec::ascending(Cents(v), Cents(b), Cents(s), 50)
    }

    #[test]
    fn max_bids_examples() {
        assert_eq!(
            max_bids(&AuctionSpec::ascending_defaults()).unwrap(),
            MaxBids::Bounded(396)
        );
        assert_eq!(max_bids(&asc(100, 100, 25)).unwrap(), MaxBids::Bounded(0));
        assert_eq!(max_bids(&asc(1000, 100, 300)).unwrap(), MaxBids::Bounded(3));
        assert_eq!(
            max_bids(&AuctionSpec::fixed_defaults()).unwrap(),
            MaxBids::Unbounded
        );
        assert!(max_bids(&asc(100, 200, 25)).is_err());
    }

    #[test]
    fn revenue_bound_from_q() {
        // (Q + 1)(b + s) = 397 * 1.25
        let MaxBids::Bounded(q) = max_bids(&AuctionSpec::ascending_defaults()).unwrap() else {
            unreachable!()
        };
        assert_eq!((q + 1) as f64 * 1.25, 496.25);
    }

    #[test]
    fn mu_examples() {
        let fixed = AuctionSpec::fixed_defaults();
        assert!((symmetric_mu(&fixed, BidIndex(7)).unwrap() - 0.99).abs() < 1e-15);
        let spec = AuctionSpec::ascending_defaults();
        assert_eq!(symmetric_mu(&spec, BidIndex(397)).unwrap(), 0.0);
        let mu2 = symmetric_mu(&spec, BidIndex(2)).unwrap();
        assert!((mu2 - (1.0 - 1.0 / 99.75)).abs() < 1e-15);
        assert!(matches!(
            symmetric_mu(&spec, BidIndex(398)),
            Err(ModelError::BidIndexOutOfRange { .. })
        ));
        assert!(symmetric_mu(&spec, BidIndex(0)).is_err());
    }

    #[test]
    fn non_integral_quotient_clamps_last_bid() {
        // (v - b) / s = 9 / 4 -> Q = 2; bid Q+1 = 3 still has v - 2s = 4 > b.
        let spec = AuctionSpec::ascending(Cents(1000), Cents(100), Cents(400), 5);
        assert_eq!(max_bids(&spec).unwrap(), MaxBids::Bounded(2));
        let mu = symmetric_mu(&spec, BidIndex(3)).unwrap();
        assert!((mu - (1.0 - 1.0 / 2.0)).abs() < 1e-15);
    }

    #[test]
    fn beta_examples() {
        let fixed = AuctionSpec::fixed_defaults();
        let b1 = symmetric_beta(&fixed, BidIndex::FIRST, true).unwrap();
        assert!(((1.0 - b1).powi(50) - 0.01).abs() < 1e-12);
        assert!((b1 - 0.0880).abs() < 5e-5);

        // n = 2 and mu = 0.75: v = 4, b = 1, p = 0.
        let two = AuctionSpec::fixed(Cents(400), Cents(100), Cents::ZERO, 2);
        let b = symmetric_beta(&two, BidIndex(3), false).unwrap();
        assert!((b - 0.75).abs() < 1e-15);

        let last =
            symmetric_beta(&AuctionSpec::ascending_defaults(), BidIndex(397), false).unwrap();
        assert_eq!(last, 0.0);
    }

    #[test]
    fn revenue_examples() {
        let fixed = AuctionSpec::fixed_defaults();
        assert_eq!(symmetric_expected_revenue(&fixed, true).unwrap(), 100.0);
        assert_eq!(symmetric_expected_revenue(&fixed, false).unwrap(), 99.0);
        let even = AuctionSpec::fixed(Cents(100), Cents(100), Cents::ZERO, 5);
        assert_eq!(symmetric_expected_revenue(&even, false).unwrap(), 0.0);
    }

    #[test]
    fn rejects_invalid_specs() {
        let mut s = AuctionSpec::fixed_defaults();
        s.population = 1;
        assert!(s.validate().is_err());
        s = AuctionSpec::fixed(Cents(100), Cents(10), Cents(100), 5);
        assert!(s.validate().is_err());
        s = AuctionSpec::fixed(Cents(100), Cents(0), Cents(0), 5);
        assert!(s.validate().is_err());
    }
}
