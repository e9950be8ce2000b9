//! Groups that value the item differently.
//!
//! Group A values the item at `alpha * v`, group B at `v`, and each believes
//! everybody shares its own valuation. Both play the symmetric equilibrium
//! for their belief; the true collective probabilities follow from the real
//! group sizes, the leader's group losing one eligible member.

use super::{require_fixed, unaware_chain, GroupProfile};
use crate::error::{invalid, Result};
use crate::markov::TwoGroupChain;
use crate::model::AuctionSpec;
use crate::money::Cents;

pub fn valuation_asymmetry_chain(spec: &AuctionSpec, k: u32, alpha: f64) -> Result<TwoGroupChain> {
    require_fixed(spec)?;
    spec.validate()?;
    let n = spec.population;
    if k == 0 || k >= n {
        return Err(invalid("k", format!("group A size must lie in 1..{n}")));
    }
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(invalid("alpha", "must be positive"));
    }
    let a_value = Cents::from_dollars_f64(alpha * spec.v());
    let mut a = GroupProfile::truthful(spec, k);
    let mut diagnostics = Vec::new();
    if a_value.as_dollars() - spec.final_price(0) <= spec.b() {
        // Group A never finds a bid worthwhile: it behaves like an empty
        // group whose beliefs are irrelevant.
        a.perceived_v = spec.bid_fee;
        diagnostics.push(format!(
            "group A never bids: alpha * v = {a_value} leaves nothing above price plus fee"
        ));
    } else {
        a.perceived_v = a_value;
    }
    let b = GroupProfile::truthful(spec, n - k);
    let mut chain = unaware_chain(spec, a, b)?;
    chain.diagnostics = diagnostics;
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::markov::Group;
    use crate::scenarios::chain_revenue;

    #[test]
    fn alpha_one_is_symmetric() {
        let chain = valuation_asymmetry_chain(&AuctionSpec::fixed_defaults(), 25, 1.0).unwrap();
        assert!((chain_revenue(&chain).unwrap() - 100.0).abs() < 1e-8);
    }

    #[test]
    fn doubled_value_is_bounded() {
        let r = chain_revenue(
            &valuation_asymmetry_chain(&AuctionSpec::fixed_defaults(), 25, 2.0).unwrap(),
        )
        .unwrap();
        assert!(r > 100.0 && r < 200.0, "{r}");
    }

    #[test]
    fn low_value_majority_shrinks_revenue() {
        let r = chain_revenue(
            &valuation_asymmetry_chain(&AuctionSpec::fixed_defaults(), 49, 0.05).unwrap(),
        )
        .unwrap();
        assert!(r < 100.0, "{r}");
    }

    #[test]
    fn worthless_item_silences_group_a() {
        let chain = valuation_asymmetry_chain(&AuctionSpec::fixed_defaults(), 10, 0.01).unwrap();
        assert_eq!(chain.diagnostics.len(), 1);
        let row = chain.row(2, Group::B).unwrap();
        assert_eq!(row.to_a, 0.0);
    }

    #[test]
    fn leader_exclusion_follows_group_sizes() {
        // With A leading, k - 1 A members and n - k B members may bid.
        let spec = AuctionSpec::fixed_defaults();
        let chain = valuation_asymmetry_chain(&spec, 10, 2.0).unwrap();
        let (ra, rb) = (1.0 / 200.0f64, 1.0 / 100.0f64);
        let lead_a = chain.row(2, Group::A).unwrap();
        let expect = ra.powf(9.0 / 49.0) * rb.powf(40.0 / 49.0);
        assert!((lead_a.absorb - expect).abs() < 1e-14);
        let lead_b = chain.row(2, Group::B).unwrap();
        let expect = ra.powf(10.0 / 49.0) * rb.powf(39.0 / 49.0);
        assert!((lead_b.absorb - expect).abs() < 1e-14);
    }
}
