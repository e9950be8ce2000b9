//! A group of `k` players pays a discounted bid fee.

use paybid::model::AuctionSpec;
use paybid::scenarios::{bidfee_asymmetry_chain, chain_revenue, chain_win_probabilities};
use paybid::Cents;

fn main() -> paybid::Result<()> {
    let spec = AuctionSpec::fixed_defaults();
    let (b_a, b_b) = (Cents(50), spec.bid_fee);
    println!("group A pays {b_a}, group B pays {b_b}");
    println!("{:>4} {:>10} {:>10}", "k", "revenue", "P(A wins)");
    for k in [1, 5, 10, 25, 49] {
        let chain = bidfee_asymmetry_chain(&spec, k, b_a, b_b)?;
        let w = chain_win_probabilities(&chain)?;
        println!("{k:>4} {:>10.4} {:>10.4}", chain_revenue(&chain)?, w[0]);
    }
    Ok(())
}
