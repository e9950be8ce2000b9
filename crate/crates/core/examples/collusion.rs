//! A coalition that never outbids its own members.

use paybid::markov::TieRule;
use paybid::model::AuctionSpec;
use paybid::scenarios::collusion_summary;

fn main() -> paybid::Result<()> {
    let spec = AuctionSpec::fixed_defaults();
    println!(
        "{:>3} {:>9} {:>9} {:>9}",
        "k", "revenue", "P(coal)", "ratio"
    );
    for k in [2, 3, 5, 10, 25] {
        let s = collusion_summary(&spec, k, TieRule::UniformOverBidders)?;
        println!(
            "{k:>3} {:>9.4} {:>9.4} {:>9.3}",
            s.revenue, s.coalition_win, s.win_ratio
        );
    }
    let single = collusion_summary(&spec, 5, TieRule::SingleIdentityA)?;
    println!(
        "k=5 bidding under one identity: revenue {:.4}",
        single.revenue
    );
    Ok(())
}
