//! Cheap bids for a subset of players.
//!
//! Group A (size `k`) pays `b_A` per bid and knows everyone else pays
//! `b_B`; group B believes all `n` players pay `b_B`. B plays the symmetric
//! equilibrium for its belief, and A's probabilities are set so that its own
//! indifference holds against B's true behaviour. For `k >= 2` the overall
//! continuation probability is `1 - b_A / (v - p)` whoever leads; with a
//! single cheap bidder it depends on the leader.

use std::sync::Arc;

use super::require_fixed;
use crate::error::{invalid, Result};
use crate::markov::{BetaFn, Group, GroupSide, Pricing, TwoGroupChain};
use crate::model::AuctionSpec;
use crate::money::Cents;
use crate::numeric::clamp_probability;

pub fn bidfee_asymmetry_chain(
    spec: &AuctionSpec,
    k: u32,
    b_a: Cents,
    b_b: Cents,
) -> Result<TwoGroupChain> {
    require_fixed(spec)?;
    spec.validate()?;
    let n = spec.population;
    if k == 0 || k >= n {
        return Err(invalid(
            "k",
            format!("cheap-bid group size must lie in 1..{n}"),
        ));
    }
    let worth = spec.net_worth(spec.v(), 2);
    if b_a.0 <= 0 || b_a > b_b {
        return Err(invalid("b_A", "cheap fee must be positive and at most b_B"));
    }
    if b_b.as_dollars() > worth {
        return Err(invalid(
            "b_B",
            "regular fee exceeds the net value of winning",
        ));
    }
    let rb = b_b.as_dollars() / worth;
    let fee_ratio = b_a.0 as f64 / b_b.0 as f64;
    let nf = n as f64;
    let kf = k as f64;

    let beta_b: BetaFn = Arc::new(move |q, _| {
        let players = if q == 1 { nf } else { nf - 1.0 };
        1.0 - rb.powf(1.0 / players)
    });
    let raw_a = move |_q: u64, leader: Option<Group>| -> f64 {
        let (own, players) = match leader {
            None => (kf, nf),
            Some(Group::B) => (kf, nf - 1.0),
            Some(Group::A) if k == 1 => return 0.0,
            Some(Group::A) => (kf - 1.0, nf - 1.0),
        };
        1.0 - fee_ratio.powf(1.0 / own) * rb.powf(1.0 / players)
    };

    let mut diagnostics = Vec::new();
    for (label, leader) in [
        ("opening bid", None),
        ("A leading", Some(Group::A)),
        ("B leading", Some(Group::B)),
    ] {
        let (_, clamped) = clamp_probability(raw_a(2, leader));
        if clamped {
            diagnostics.push(format!("corner equilibrium: beta_A clamped ({label})"));
        }
    }
    let beta_a: BetaFn = Arc::new(move |q, leader| clamp_probability(raw_a(q, leader)).0);

    let mut chain = TwoGroupChain::new(
        GroupSide::new(k, beta_a, b_a),
        GroupSide::new(n - k, beta_b, b_b),
        Pricing::from(spec.kind),
    );
    chain.diagnostics = diagnostics;
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios::{chain_expected_bids, chain_revenue};

    fn spec() -> AuctionSpec {
        AuctionSpec::fixed_defaults()
    }

    #[test]
    fn equal_fees_are_symmetric() {
        let chain = bidfee_asymmetry_chain(&spec(), 5, Cents(100), Cents(100)).unwrap();
        assert!((chain_revenue(&chain).unwrap() - 100.0).abs() < 1e-8);
    }

    #[test]
    fn length_ignores_regular_fee() {
        let lengths: Vec<f64> = [80, 100, 150]
            .iter()
            .map(|&bb| {
                chain_expected_bids(
                    &bidfee_asymmetry_chain(&spec(), 5, Cents(50), Cents(bb)).unwrap(),
                )
                .unwrap()
            })
            .collect();
        for l in &lengths {
            assert!((l - 200.0).abs() < 1e-8, "{lengths:?}");
        }
    }

    #[test]
    fn continuation_is_leader_free_for_large_groups() {
        let chain = bidfee_asymmetry_chain(&spec(), 3, Cents(40), Cents(100)).unwrap();
        for leader in [Group::A, Group::B] {
            let row = chain.row(2, leader).unwrap();
            assert!((row.absorb - 0.004).abs() < 1e-14, "{leader:?}: {row:?}");
        }
    }

    #[test]
    fn single_cheap_bidder_depends_on_leader() {
        let chain = bidfee_asymmetry_chain(&spec(), 1, Cents(40), Cents(100)).unwrap();
        let a = chain.row(2, Group::A).unwrap();
        let b = chain.row(2, Group::B).unwrap();
        assert!((a.absorb - 0.01).abs() < 1e-14);
        assert!((b.absorb - 0.004).abs() < 1e-14);
    }

    #[test]
    fn cheaper_bids_raise_revenue() {
        let mut last = 0.0;
        for ba in [100, 80, 60, 40, 20] {
            let r =
                chain_revenue(&bidfee_asymmetry_chain(&spec(), 5, Cents(ba), Cents(100)).unwrap())
                    .unwrap();
            assert!(r > last, "b_A={ba}: {r} <= {last}");
            last = r;
        }
    }

    #[test]
    fn rejects_bad_fees() {
        assert!(bidfee_asymmetry_chain(&spec(), 5, Cents(120), Cents(100)).is_err());
        assert!(bidfee_asymmetry_chain(&spec(), 50, Cents(50), Cents(100)).is_err());
        assert!(bidfee_asymmetry_chain(
            &AuctionSpec::ascending_defaults(),
            5,
            Cents(50),
            Cents(100)
        )
        .is_err());
    }
}
