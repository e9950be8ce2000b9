//! An auctioneer's shill that bids the first `L` bids of every auction.

use paybid::model::AuctionSpec;
use paybid::scenarios::{shill_profit, ShillPolicy};

fn main() -> paybid::Result<()> {
    let spec = AuctionSpec::ascending_defaults();
    for identities in [1, 2] {
        println!(
            "{identities} shill identit{}",
            if identities == 1 { "y" } else { "ies" }
        );
        for bid_budget in [0, 5, 10, 20, 40] {
            let policy = ShillPolicy {
                entry_prob: 1.0,
                bid_budget,
                identities,
            };
            let out = shill_profit(&spec, policy)?;
            println!(
                "  L={bid_budget:>2}  profit {:>8.3}  P(shill wins) {:.4}",
                out.expected_profit, out.win_prob_shill
            );
        }
    }
    Ok(())
}
