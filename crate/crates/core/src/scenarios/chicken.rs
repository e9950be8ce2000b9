//! Two committed players facing each other.
//!
//! Each can quit (losing the `beta` already spent on bids) or play until the
//! backstop, in which case both lose `alpha * v`. A player who keeps going
//! while the other quits gains `gamma * v` on average.

use serde::Serialize;

use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ChickenStrategy {
    Quit,
    PlayTillEnd,
}

/// Payoff pairs `(row player, column player)` indexed by strategy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChickenPayoffs {
    pub cells: [[(f64, f64); 2]; 2],
}

impl ChickenPayoffs {
    pub fn get(&self, row: ChickenStrategy, col: ChickenStrategy) -> (f64, f64) {
        self.cells[row as usize][col as usize]
    }
}

pub fn chicken_payoffs(alpha: f64, beta_spent: f64, gamma: f64, v: f64) -> Result<ChickenPayoffs> {
    if !(alpha > 1.0) {
        return Err(invalid("alpha", "the backstop must exceed the value"));
    }
    if !(beta_spent >= 0.0) || !(gamma >= 0.0) || !(v >= 0.0) {
        return Err(invalid(
            "beta_spent",
            "spend, gain and value must be nonnegative",
        ));
    }
    let gain = gamma * v;
    let crash = -alpha * v;
    Ok(ChickenPayoffs {
        cells: [
            [(-beta_spent, -beta_spent), (-beta_spent, gain)],
            [(gain, -beta_spent), (crash, crash)],
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::ChickenStrategy::*;
    use super::*;

    #[test]
    fn table_cells() {
        let t = chicken_payoffs(1.5, 12.0, 0.3, 100.0).unwrap();
        assert_eq!(t.get(Quit, Quit), (-12.0, -12.0));
        assert_eq!(t.get(Quit, PlayTillEnd), (-12.0, 30.0));
        assert_eq!(t.get(PlayTillEnd, Quit), (30.0, -12.0));
        assert_eq!(t.get(PlayTillEnd, PlayTillEnd), (-150.0, -150.0));
    }

    #[test]
    fn free_quit() {
        let t = chicken_payoffs(2.0, 0.0, 0.0, 100.0).unwrap();
        assert_eq!(t.get(Quit, PlayTillEnd).0, 0.0);
        assert!(chicken_payoffs(1.0, 0.0, 0.0, 100.0).is_err());
    }
}
