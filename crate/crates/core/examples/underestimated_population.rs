//! Revenue when every bidder believes there are `n - k` players.

use paybid::model::AuctionSpec;
use paybid::scenarios::{chain_revenue, underestimate_chain, underestimate_uniform};

fn main() -> paybid::Result<()> {
    let spec = AuctionSpec::fixed_defaults();
    println!("{:>4} {:>12} {:>12}", "k", "closed form", "chain");
    for k in -5..=5 {
        let closed = underestimate_uniform(&spec, k)?.revenue;
        let chain = chain_revenue(&underestimate_chain(&spec, k)?)?;
        println!("{k:>4} {closed:>12.4} {chain:>12.4}");
    }
    Ok(())
}
