//! Equilibrium when bidders only know a distribution over the number of
//! players.

use paybid::model::AuctionSpec;
use paybid::scenarios::{point_belief_beta, uncertain_revenue, PopulationBelief};

fn main() -> paybid::Result<()> {
    let spec = AuctionSpec::fixed_defaults();
    println!("known n: beta = {:.6}", point_belief_beta(&spec));
    for spread in [0, 5, 10, 20] {
        let belief = PopulationBelief::spread(spec.n(), spread)?;
        let (beta, revenue) = uncertain_revenue(&spec, &belief)?;
        println!(
            "uniform on n ± {spread:>2}: beta = {:.6} (mean-n beta {:.6}), residual {:.1e}, revenue {revenue:.4}",
            beta.beta, beta.point_beta, beta.residual
        );
    }
    Ok(())
}
