//! Monte Carlo revenue against the analytic chain for a coalition.

use paybid::markov::TieRule;
use paybid::model::AuctionSpec;
use paybid::scenarios::{chain_revenue, collusion_chain};
use paybid::sim::{estimate, Population};

fn main() -> paybid::Result<()> {
    let spec = AuctionSpec::fixed_defaults();
    let chain = collusion_chain(&spec, 5, TieRule::UniformOverBidders)?;
    let exact = chain_revenue(&chain)?;
    let est = estimate(&spec, &Population::from_chain(&chain), 200_000, 7);
    println!("analytic {exact:.4}");
    println!(
        "simulated {:.4} ± {:.4} over {} successful trials",
        est.mean_revenue,
        est.se.unwrap_or(f64::NAN),
        est.successes
    );
    println!("win frequencies A/B {:?}", est.win_prob_by_group);
    Ok(())
}
