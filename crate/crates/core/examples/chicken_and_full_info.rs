//! The two-player end game as a game of chicken, and the full-information
//! equilibrium for heterogeneous players.

use paybid::scenarios::{chicken_payoffs, full_info_equilibrium, ChickenStrategy};
use paybid::Cents;

fn main() -> paybid::Result<()> {
    let t = chicken_payoffs(1.5, 10.0, 0.3, 100.0)?;
    for row in [ChickenStrategy::Quit, ChickenStrategy::PlayTillEnd] {
        for col in [ChickenStrategy::Quit, ChickenStrategy::PlayTillEnd] {
            println!("{row:?} vs {col:?}: {:?}", t.get(row, col));
        }
    }

    let fees = [Cents(100), Cents(100), Cents(80), Cents(60)];
    let values = [Cents(10000), Cents(12000), Cents(10000), Cents(9000)];
    let eq = full_info_equilibrium(&fees, &values, Cents::ZERO)?;
    for (i, beta) in eq.beta.iter().enumerate() {
        println!("player {i}: beta {beta:.6}");
    }
    println!("residual {:.1e}", eq.residual());
    Ok(())
}
