//! Bid probabilities and revenue of the symmetric equilibrium, for a
//! fixed-price and an ascending auction.

use paybid::model::{
    max_bids, symmetric_equilibrium, symmetric_expected_revenue, AuctionSpec, BidIndex,
};

fn main() -> paybid::Result<()> {
    let fixed = AuctionSpec::fixed_defaults();
    println!(
        "fixed price, n={} v={} b={}",
        fixed.n(),
        fixed.v(),
        fixed.b()
    );
    for q in [1, 2, 10] {
        let eq = symmetric_equilibrium(&fixed, BidIndex(q))?;
        println!("  q={q:>3}  mu={:.6}  beta={:.6}", eq.mu, eq.beta);
    }
    println!(
        "  expected revenue {:.4}",
        symmetric_expected_revenue(&fixed, true)?
    );

    let asc = AuctionSpec::ascending_defaults();
    println!("ascending, max bids {:?}", max_bids(&asc)?);
    for q in [1, 100, 390, 396] {
        let eq = symmetric_equilibrium(&asc, BidIndex(q))?;
        println!("  q={q:>3}  mu={:.6}  beta={:.6}", eq.mu, eq.beta);
    }
    println!(
        "  expected revenue {:.4}",
        symmetric_expected_revenue(&asc, true)?
    );
    Ok(())
}
