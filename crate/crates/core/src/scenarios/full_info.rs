//! Heterogeneous players with full information.
//!
//! Player `i` pays `b_i` per bid and values the item at `v_i`. Indifference
//! requires that nobody else bids with probability `b_i / (v_i - p)`. Taking
//! logs with `eta_j = ln(1 - beta_j)` and `zeta_i = ln(b_i / (v_i - p))`
//! gives the linear system `sum_{j != i} eta_j = zeta_i`, solved by
//! `eta_i = sum(zeta) / (n - 1) - zeta_i`.

use serde::Serialize;

use crate::error::{invalid, ModelError, Result};
use crate::money::Cents;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FullInfoEquilibrium {
    pub beta: Vec<f64>,
    pub eta: Vec<f64>,
    pub zeta: Vec<f64>,
}

impl FullInfoEquilibrium {
    /// Largest `|sum_{j != i} eta_j - zeta_i|`.
    pub fn residual(&self) -> f64 {
        let total: f64 = self.eta.iter().sum();
        self.eta
            .iter()
            .zip(&self.zeta)
            .map(|(e, z)| (total - e - z).abs())
            .fold(0.0, f64::max)
    }
}

pub fn full_info_equilibrium(
    bid_fees: &[Cents],
    values: &[Cents],
    p: Cents,
) -> Result<FullInfoEquilibrium> {
    if bid_fees.len() != values.len() {
        return Err(invalid("values", "need one value per bid fee"));
    }
    let n = bid_fees.len();
    if n < 3 {
        return Err(invalid(
            "n",
            "the system is degenerate for fewer than three players",
        ));
    }
    let mut zeta = Vec::with_capacity(n);
    for (i, (&b, &v)) in bid_fees.iter().zip(values).enumerate() {
        let worth = (v - p).as_dollars();
        if b.0 <= 0 || b.as_dollars() >= worth {
            return Err(invalid(
                "bid_fees",
                format!(
                    "player {i}: fee {b} must be positive and below v - p = {}",
                    v - p
                ),
            ));
        }
        zeta.push((b.as_dollars() / worth).ln());
    }
    solve_log_system(zeta)
}

/// Solves the system for given `zeta` values; exposed for testing random
/// instances directly in log space.
pub fn solve_log_system(zeta: Vec<f64>) -> Result<FullInfoEquilibrium> {
    let n = zeta.len();
    if n < 3 {
        return Err(invalid(
            "n",
            "the system is degenerate for fewer than three players",
        ));
    }
    let share = zeta.iter().sum::<f64>() / (n - 1) as f64;
    let eta: Vec<f64> = zeta.iter().map(|z| share - z).collect();
    if let Some((player, &e)) = eta.iter().enumerate().find(|(_, &e)| e > 0.0) {
        return Err(ModelError::NoInteriorEquilibrium { player, eta: e });
    }
    let beta = eta.iter().map(|e| -e.exp_m1()).collect();
    Ok(FullInfoEquilibrium { beta, eta, zeta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{symmetric_beta, AuctionSpec, BidIndex};

    #[test]
    fn identical_players_match_symmetric() {
        let fees = vec![Cents(100); 50];
        let values = vec![Cents(10000); 50];
        let eq = full_info_equilibrium(&fees, &values, Cents::ZERO).unwrap();
        let sym = symmetric_beta(&AuctionSpec::fixed_defaults(), BidIndex(2), false).unwrap();
        for b in eq.beta {
            assert!((b - sym).abs() < 1e-12);
        }
    }

    #[test]
    fn three_player_system() {
        let eq = solve_log_system(vec![0.5f64.ln(), 0.5f64.ln(), 0.25f64.ln()]).unwrap();
        assert!(eq.residual() <= 1e-12);
        assert!((eq.eta[0] - 0.5f64.ln()).abs() < 1e-15);
        assert!(eq.eta[2].abs() < 1e-15);
    }

    #[test]
    fn infeasible_instances() {
        let err = full_info_equilibrium(
            &[Cents(100), Cents(100), Cents(100)],
            &[Cents(100), Cents(500), Cents(500)],
            Cents::ZERO,
        );
        assert!(err.is_err());
        // A player with a far smaller fee-to-value ratio than the others
        // would need a negative bid probability from somebody.
        let err = solve_log_system(vec![-5.0, -0.01, -0.01]).unwrap_err();
        assert!(matches!(
            err,
            ModelError::NoInteriorEquilibrium { player: 0, .. }
        ));
        assert!(solve_log_system(vec![-1.0, -1.0]).is_err());
    }
}
