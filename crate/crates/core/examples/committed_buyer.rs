//! A player who keeps bidding until the item is won or its spend would
//! exceed the retail price.

use paybid::model::AuctionSpec;
use paybid::scenarios::{committed_player_profit, CommittedPolicy};

fn main() -> paybid::Result<()> {
    let spec = AuctionSpec::ascending_defaults();
    for alpha in [1.2, 1.5, 2.0] {
        let out = committed_player_profit(&spec, CommittedPolicy { alpha })?;
        println!(
            "alpha {alpha}: player {:>8.3}  auctioneer {:>8.3}  P(win) {:.4}  worst {:>8.3}",
            out.player_profit,
            out.auctioneer_profit,
            out.committed_win_prob,
            out.worst_player_profit
        );
    }
    Ok(())
}
