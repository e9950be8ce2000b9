//! A group of `k` players values the item at `alpha` times its retail price.

use paybid::model::AuctionSpec;
use paybid::scenarios::{chain_expected_bids, chain_revenue, valuation_asymmetry_chain};

fn main() -> paybid::Result<()> {
    let spec = AuctionSpec::fixed_defaults();
    for alpha in [1.5, 2.0, 4.0] {
        println!("alpha = {alpha}");
        for k in [1, 10, 25] {
            let chain = valuation_asymmetry_chain(&spec, k, alpha)?;
            println!(
                "  k={k:>2}  revenue {:>9.4}  bids {:>9.4}",
                chain_revenue(&chain)?,
                chain_expected_bids(&chain)?
            );
        }
    }
    Ok(())
}
