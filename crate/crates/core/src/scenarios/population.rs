//! Misestimated populations.
//!
//! Players who believe there are `n_hat` bidders bid as if `n_hat - 1`
//! opponents competed for each bid. When `n_hat < n` they overbid relative to
//! equilibrium and the auction runs longer than anyone expects.

use serde::Serialize;

use super::{chain_revenue, require_ascending, require_fixed, unaware_chain, GroupProfile};
use crate::error::{invalid, ModelError, Result};
use crate::markov::TwoGroupChain;
use crate::model::{max_bids, AuctionSpec, BidIndex, MaxBids};
use crate::numeric::{bisect, per_player_beta};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UnderestimateResult {
    /// True probability that another bid follows.
    pub mu: f64,
    pub revenue: f64,
}

fn perceived_n(spec: &AuctionSpec, k: i32) -> Result<u32> {
    let n = spec.population as i64;
    let k = k as i64;
    if k > n - 2 || k <= 1 - n {
        return Err(invalid(
            "k",
            format!("misestimate {k} must lie in ({}, {}]", 1 - n, n - 2),
        ));
    }
    Ok((n - k) as u32)
}

/// Everybody believes there are `n - k` players (negative `k` overestimates).
///
/// `1 - mu = (b/(v-p))^((n-1)/(n-k-1))` and the number of bids is geometric,
/// so `E[R] = p + b / (1 - mu)`.
pub fn underestimate_uniform(spec: &AuctionSpec, k: i32) -> Result<UnderestimateResult> {
    require_fixed(spec)?;
    spec.validate()?;
    let n_hat = perceived_n(spec, k)?;
    let n = spec.population as f64;
    let ratio = spec.b() / spec.net_worth(spec.v(), 2);
    let non_bid = ratio.powf((n - 1.0) / (n_hat as f64 - 1.0));
    Ok(UnderestimateResult {
        mu: 1.0 - non_bid,
        revenue: spec.final_price(0) + spec.b() / non_bid,
    })
}

/// The uniform misestimate as a chain, for cross-checking the closed form.
pub fn underestimate_chain(spec: &AuctionSpec, k: i32) -> Result<TwoGroupChain> {
    spec.validate()?;
    let n_hat = perceived_n(spec, k)?;
    let mut a = GroupProfile::truthful(spec, 1);
    a.perceived_n = n_hat;
    let mut b = a;
    b.size = spec.population - 1;
    unaware_chain(spec, a, b)
}

/// Half the players believe there are `n - k` bidders, half `n + k`.
pub fn mixed_estimates_chain(spec: &AuctionSpec, k: u32) -> Result<TwoGroupChain> {
    require_fixed(spec)?;
    spec.validate()?;
    let n = spec.population;
    if !n.is_multiple_of(2) {
        return Err(invalid(
            "population",
            "mixed estimates need an even population",
        ));
    }
    if k + 1 >= n {
        return Err(invalid("k", format!("must be below {}", n - 1)));
    }
    let mut under = GroupProfile::truthful(spec, n / 2);
    under.perceived_n = n - k;
    let mut over = under;
    over.perceived_n = n + k;
    unaware_chain(spec, under, over)
}

/// Ascending auction where everyone believes there are `n - k` players.
///
/// Writing `mu_j = 1 - (b/(v-s(j-1)))^((n-1)/(n-k-1))` for the chance that
/// bid `j` follows bid `j-1`, a successful auction collects `b + s` per bid:
/// `E[R] = (b+s) * (1 + sum_{m=2}^{Q+1} prod_{j=2}^{m} mu_j)`.
pub fn ascending_underestimate_revenue(spec: &AuctionSpec, k: i32) -> Result<f64> {
    require_ascending(spec)?;
    spec.validate()?;
    let n_hat = perceived_n(spec, k)?;
    let MaxBids::Bounded(q_max) = max_bids(spec)? else {
        unreachable!("ascending auctions are bounded")
    };
    let exponent = (spec.population as f64 - 1.0) / (n_hat as f64 - 1.0);
    let step = spec.b() + spec.final_price(1);
    let mut survive = 1.0;
    let mut total = 1.0;
    for j in 2..=q_max + 1 {
        let ratio = (spec.b() / spec.net_worth(spec.v(), j)).min(1.0);
        survive *= 1.0 - ratio.powf(exponent);
        if survive == 0.0 {
            break;
        }
        total += survive;
    }
    Ok(step * total)
}

pub fn ascending_underestimate_chain(spec: &AuctionSpec, k: i32) -> Result<TwoGroupChain> {
    require_ascending(spec)?;
    underestimate_chain(spec, k)
}

/// Distribution over the number of players.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PopulationBelief {
    support: Vec<(u32, f64)>,
}

impl PopulationBelief {
    pub fn new(support: Vec<(u32, f64)>) -> Result<Self> {
        if support.is_empty() {
            return Err(invalid("support", "empty belief"));
        }
        let mut total = 0.0;
        for &(i, z) in &support {
            if i == 0 {
                return Err(invalid("support", "player counts start at 1"));
            }
            if !(z >= 0.0) {
                return Err(invalid("support", format!("negative weight {z} on {i}")));
            }
            total += z;
        }
        if (total - 1.0).abs() > 1e-9 {
            return Err(invalid("support", format!("weights sum to {total}, not 1")));
        }
        Ok(PopulationBelief { support })
    }

    pub fn point(n: u32) -> Self {
        PopulationBelief {
            support: vec![(n, 1.0)],
        }
    }

    /// Half the mass on `n - k`, half on `n + k`.
    pub fn spread(n: u32, k: u32) -> Result<Self> {
        if k >= n {
            return Err(invalid("k", "spread would put mass on nonpositive counts"));
        }
        Self::new(vec![(n - k, 0.5), (n + k, 0.5)])
    }

    pub fn support(&self) -> &[(u32, f64)] {
        &self.support
    }

    pub fn mean(&self) -> f64 {
        self.support.iter().map(|&(i, z)| i as f64 * z).sum()
    }

    /// `sum_i z_i (1 - beta)^(i-1)`: the believed chance that nobody else bids.
    pub fn non_bid(&self, beta: f64) -> f64 {
        let ln_keep = (-beta).ln_1p();
        self.support
            .iter()
            .map(|&(i, z)| {
                if i == 1 {
                    z
                } else {
                    z * ((i - 1) as f64 * ln_keep).exp()
                }
            })
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UncertainBeta {
    /// Equilibrium under the uncertain belief.
    pub beta: f64,
    /// Equilibrium when the population is known to equal the mean.
    pub point_beta: f64,
    /// `|sum_i z_i (1-beta)^(i-1) - b/(v-p)|` at the returned root.
    pub residual: f64,
}

/// Solves `sum_i z_i (1 - beta)^(i-1) = b / (v - p)` by bisection.
///
/// The left side falls strictly in `beta` unless all mass sits on a single
/// player. Since `(1-beta)^(i-1)` is convex in `i`, the point-belief solution
/// leaves the left side at or above the target, so the root is searched on
/// `[point_beta, 1]`.
pub fn uncertain_population_beta(
    spec: &AuctionSpec,
    belief: &PopulationBelief,
) -> Result<UncertainBeta> {
    require_fixed(spec)?;
    spec.validate()?;
    if belief.support.iter().all(|&(i, z)| i == 1 || z == 0.0) {
        return Err(invalid(
            "belief",
            "all mass on a single player: no dependence on beta",
        ));
    }
    let mean = belief.mean();
    let n = spec.population as f64;
    if (mean - n).abs() > 1e-9 * n {
        return Err(invalid(
            "belief",
            format!("belief mean {mean} differs from the population {n}"),
        ));
    }
    let target = spec.b() / spec.net_worth(spec.v(), 2);
    let point_beta = crate::model::symmetric_beta(spec, BidIndex(2), false)?;
    let f = |beta: f64| belief.non_bid(beta) - target;
    if f(1.0) >= 0.0 {
        return Err(ModelError::NoRoot(format!(
            "believed chance of being alone is at least {target} for every beta"
        )));
    }
    let lo = if f(point_beta) >= 0.0 {
        point_beta
    } else {
        0.0
    };
    let beta = bisect(f, lo, 1.0, 200)?;
    Ok(UncertainBeta {
        beta,
        point_beta,
        residual: f(beta).abs(),
    })
}

/// Conditioned revenue when all `n` players use the uncertain-belief
/// probability: each bid is followed by another unless all `n - 1`
/// non-leaders pass, so `E[R] = p + b / (1 - beta)^(n-1)`.
pub fn uncertain_revenue(
    spec: &AuctionSpec,
    belief: &PopulationBelief,
) -> Result<(UncertainBeta, f64)> {
    let u = uncertain_population_beta(spec, belief)?;
    let pass = (1.0 - u.beta).powi(spec.population as i32 - 1);
    Ok((u, spec.final_price(1) + spec.b() / pass))
}

/// Per-player probability for a point belief at `n` players, straight from
/// the formula; used to check [`uncertain_population_beta`].
pub fn point_belief_beta(spec: &AuctionSpec) -> f64 {
    let target = spec.b() / spec.net_worth(spec.v(), 2);
    per_player_beta(target, spec.population as f64 - 1.0)
}

/// Conditioned revenue of the mixed setting.
pub fn mixed_estimates_revenue(spec: &AuctionSpec, k: u32) -> Result<f64> {
    chain_revenue(&mixed_estimates_chain(spec, k)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::money::Cents;

    #[test]
    fn uniform_examples() {
        let spec = AuctionSpec::fixed_defaults();
        assert!((underestimate_uniform(&spec, 0).unwrap().revenue - 100.0).abs() < 1e-9);
        let r1 = underestimate_uniform(&spec, 1).unwrap().revenue;
        assert!((r1 - 100f64.powf(49.0 / 48.0)).abs() < 1e-9);
        assert!((r1 - 110.07).abs() < 5e-3);
        assert!(underestimate_uniform(&spec, -48).unwrap().revenue < 100.0);
        assert!(underestimate_uniform(&spec, 49).is_err());
        assert!(underestimate_uniform(&spec, -49).is_err());
    }

    #[test]
    fn uniform_with_positive_price() {
        let spec = AuctionSpec::fixed(Cents(10000), Cents(100), Cents(2000), 50);
        let r = underestimate_uniform(&spec, 0).unwrap();
        assert!((r.mu - (1.0 - 1.0 / 80.0)).abs() < 1e-12);
        assert!((r.revenue - 100.0).abs() < 1e-9);
    }

    #[test]
    fn chain_matches_closed_form() {
        let spec = AuctionSpec::fixed_defaults();
        for k in [-10, 0, 3, 20] {
            let closed = underestimate_uniform(&spec, k).unwrap().revenue;
            let chain = chain_revenue(&underestimate_chain(&spec, k).unwrap()).unwrap();
            assert!(
                (closed - chain).abs() < 1e-8 * closed,
                "k={k}: {closed} vs {chain}"
            );
        }
    }

    #[test]
    fn mixed_lies_between() {
        let spec = AuctionSpec::fixed_defaults();
        assert!((mixed_estimates_revenue(&spec, 0).unwrap() - 100.0).abs() < 1e-8);
        let mixed = mixed_estimates_revenue(&spec, 10).unwrap();
        assert!(mixed > 100.0);
        assert!(mixed < underestimate_uniform(&spec, 10).unwrap().revenue);
        assert!(mixed_estimates_chain(&spec, 49).is_err());
    }

    #[test]
    fn ascending_examples() {
        let spec = AuctionSpec::ascending_defaults();
        let r0 = ascending_underestimate_revenue(&spec, 0).unwrap();
        assert!((r0 - 100.0).abs() < 1e-6, "{r0}");
        let r40 = ascending_underestimate_revenue(&spec, 40).unwrap();
        assert!(r40 > 400.0 && r40 <= 496.25, "{r40}");
        let chain = chain_revenue(&ascending_underestimate_chain(&spec, 5).unwrap()).unwrap();
        let closed = ascending_underestimate_revenue(&spec, 5).unwrap();
        assert!(
            (chain - closed).abs() < 1e-8 * closed,
            "{chain} vs {closed}"
        );
    }

    #[test]
    fn uncertain_examples() {
        let spec = AuctionSpec::fixed_defaults();
        let point = uncertain_population_beta(&spec, &PopulationBelief::point(50)).unwrap();
        assert!((point.beta - point.point_beta).abs() < 1e-15);
        assert!((point.point_beta - point_belief_beta(&spec)).abs() < 1e-15);
        let spread =
            uncertain_population_beta(&spec, &PopulationBelief::spread(50, 20).unwrap()).unwrap();
        assert!(spread.beta >= spread.point_beta);
        let three = PopulationBelief::new(vec![(10, 0.25), (50, 0.5), (90, 0.25)]).unwrap();
        let r = uncertain_population_beta(&spec, &three).unwrap();
        assert!(r.residual <= 1e-12);
        assert!(uncertain_population_beta(&spec, &PopulationBelief::point(1)).is_err());
        assert!(uncertain_population_beta(&spec, &PopulationBelief::point(49)).is_err());
    }
}
