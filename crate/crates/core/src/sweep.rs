//! Scenario evaluation at a single point and along a one-parameter grid.
//!
//! Every scenario yields a fixed set of analytic columns; when `trials > 0`
//! Monte Carlo columns `mc_*` with standard errors are appended. Grid
//! points run in parallel and rows come back in grid order. Monte Carlo row
//! `i` uses seed `seed + i`, so output is byte-identical for identical
//! inputs.

use rayon::prelude::*;
use serde::Serialize;

use crate::config::{AuctionType, Scenario, ScenarioConfig};
use crate::error::{invalid, Result};
use crate::markov::{constant_beta, Group, TwoGroupChain};
use crate::model::AuctionSpec;
use crate::money::Cents;
use crate::report::{Cell, Metadata, Table};
use crate::scenarios::{
    ascending_underestimate_chain, ascending_underestimate_revenue, bidfee_asymmetry_chain,
    chain_expected_bids, chain_revenue, collusion_chain, collusion_summary,
    committed_player_profit, mixed_estimates_chain, shill_chain, shill_profit, uncertain_revenue,
    underestimate_chain, underestimate_uniform, valuation_asymmetry_chain, CommittedPolicy,
    PopulationBelief, ShillPolicy,
};
use crate::sim::{estimate, estimate_statistic, PlayerClass, Population};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSpec {
    pub config: ScenarioConfig,
    pub param: String,
    pub from: f64,
    pub to: f64,
    pub step: f64,
    pub trials: u64,
    pub seed: u64,
}

/// Relative slack so that `to` survives accumulated rounding in the grid.
const GRID_SLACK: f64 = 1e-9;

impl SweepSpec {
    pub fn grid(&self) -> Result<Vec<f64>> {
        if !(self.step > 0.0) || !self.step.is_finite() {
            return Err(invalid("step", "must be positive"));
        }
        if !self.from.is_finite() || !self.to.is_finite() || self.from > self.to {
            return Err(invalid(
                "range",
                format!("empty range {}..{}", self.from, self.to),
            ));
        }
        let count = ((self.to - self.from) / self.step + GRID_SLACK).floor() as u64 + 1;
        Ok((0..count)
            .map(|i| self.from + i as f64 * self.step)
            .collect())
    }

    pub fn canonical(&self) -> String {
        format!(
            "{}param = {:?}\nfrom = {}\nto = {}\nstep = {}\ntrials = {}\nseed = {}\n",
            self.config.to_toml(),
            self.param,
            self.from,
            self.to,
            self.step,
            self.trials,
            self.seed
        )
    }
}

/// Column names for a scenario, without the swept parameter.
pub fn columns(scenario: Scenario, monte_carlo: bool) -> Vec<&'static str> {
    let mut cols: Vec<&'static str> = match scenario {
        Scenario::Underestimate => vec!["revenue", "chain_revenue"],
        Scenario::Mixed | Scenario::Valuation => vec!["revenue", "expected_bids"],
        Scenario::Uncertain => vec!["beta", "point_beta", "residual", "revenue"],
        Scenario::Bidfee => vec!["revenue", "expected_bids"],
        Scenario::Collusion => vec![
            "revenue",
            "coalition_win",
            "outsiders_win",
            "win_ratio",
            "expected_bids",
        ],
        Scenario::Shill => vec![
            "profit",
            "win_prob_shill",
            "profit_with_shill",
            "expected_bids",
        ],
        Scenario::Committed => vec![
            "player_profit",
            "auctioneer_profit",
            "committed_win_prob",
            "worst_player_profit",
        ],
    };
    if monte_carlo {
        cols.extend(match scenario {
            Scenario::Shill => ["mc_profit", "mc_profit_se"],
            Scenario::Committed => ["mc_auctioneer_profit", "mc_auctioneer_profit_se"],
            _ => ["mc_revenue", "mc_revenue_se"],
        });
    }
    cols
}

fn positive_u32(name: &'static str, k: i64) -> Result<u32> {
    u32::try_from(k).map_err(|_| invalid(name, format!("must be a non-negative integer, got {k}")))
}

fn mc_chain_revenue(
    spec: &AuctionSpec,
    chain: &TwoGroupChain,
    trials: u64,
    seed: u64,
) -> [Option<f64>; 2] {
    let est = estimate(spec, &Population::from_chain(chain), trials, seed);
    [(est.successes > 0).then_some(est.mean_revenue), est.se]
}

/// Analytic columns followed, when `trials > 0`, by Monte Carlo columns.
pub fn evaluate(config: &ScenarioConfig, trials: u64, seed: u64) -> Result<Vec<Option<f64>>> {
    let spec = config.spec()?;
    let mc = trials > 0;
    let mut out: Vec<Option<f64>>;
    let mut mc_cols: [Option<f64>; 2] = [None, None];
    match config.scenario {
        Scenario::Underestimate => {
            let k = i32::try_from(config.k()).map_err(|_| invalid("k", "out of range"))?;
            let (closed, chain) = match config.auction_type() {
                AuctionType::Fixed => (
                    underestimate_uniform(&spec, k)?.revenue,
                    underestimate_chain(&spec, k)?,
                ),
                AuctionType::Ascending => (
                    ascending_underestimate_revenue(&spec, k)?,
                    ascending_underestimate_chain(&spec, k)?,
                ),
            };
            out = vec![Some(closed), Some(chain_revenue(&chain)?)];
            if mc {
                mc_cols = mc_chain_revenue(&spec, &chain, trials, seed);
            }
        }
        Scenario::Mixed | Scenario::Valuation | Scenario::Bidfee => {
            let k = positive_u32("k", config.k())?;
            let chain = match config.scenario {
                Scenario::Mixed => mixed_estimates_chain(&spec, k)?,
                Scenario::Valuation => valuation_asymmetry_chain(&spec, k, config.alpha())?,
                _ => bidfee_asymmetry_chain(
                    &spec,
                    k,
                    Cents::from_dollars_f64(config.b_a),
                    Cents::from_dollars_f64(config.b_b()),
                )?,
            };
            out = vec![
                Some(chain_revenue(&chain)?),
                Some(chain_expected_bids(&chain)?),
            ];
            if mc {
                mc_cols = mc_chain_revenue(&spec, &chain, trials, seed);
            }
        }
        Scenario::Uncertain => {
            let belief = PopulationBelief::spread(spec.population, config.spread)?;
            let (u, revenue) = uncertain_revenue(&spec, &belief)?;
            out = vec![
                Some(u.beta),
                Some(u.point_beta),
                Some(u.residual),
                Some(revenue),
            ];
            if mc {
                let class = PlayerClass::shared(
                    Group::B,
                    spec.population,
                    spec.bid_fee,
                    constant_beta(u.beta, u.beta),
                );
                let est = estimate(&spec, &Population::new(vec![class]), trials, seed);
                mc_cols = [(est.successes > 0).then_some(est.mean_revenue), est.se];
            }
        }
        Scenario::Collusion => {
            let k = positive_u32("k", config.k())?;
            let s = collusion_summary(&spec, k, config.tie_rule.into())?;
            out = vec![
                Some(s.revenue),
                Some(s.coalition_win),
                Some(s.outsiders_win),
                Some(s.win_ratio),
                Some(s.expected_bids),
            ];
            if mc {
                let chain = collusion_chain(&spec, k, config.tie_rule.into())?;
                mc_cols = mc_chain_revenue(&spec, &chain, trials, seed);
            }
        }
        Scenario::Shill => {
            let policy = ShillPolicy {
                entry_prob: config.rho,
                bid_budget: config.l,
                identities: config.identities,
            };
            let o = shill_profit(&spec, policy)?;
            out = vec![
                Some(o.expected_profit),
                Some(o.win_prob_shill),
                Some(o.profit_with_shill),
                Some(o.expected_bids_with_shill),
            ];
            if mc {
                mc_cols = if policy.entry_prob == 0.0 || policy.bid_budget == 0 {
                    [Some(0.0), Some(0.0)]
                } else {
                    let chain = shill_chain(&spec, policy)?;
                    let v = spec.v();
                    let st = estimate_statistic(
                        &spec,
                        &Population::from_chain(&chain),
                        trials,
                        seed,
                        |t| {
                            let handed_over = if t.winner_group == Some(Group::B) {
                                v
                            } else {
                                0.0
                            };
                            Some(t.revenue.as_dollars() - handed_over)
                        },
                    );
                    [
                        Some(policy.entry_prob * st.mean),
                        st.se.map(|se| policy.entry_prob * se),
                    ]
                };
            }
        }
        Scenario::Committed => {
            let policy = CommittedPolicy {
                alpha: config.alpha(),
            };
            let o = committed_player_profit(&spec, policy)?;
            out = vec![
                Some(o.player_profit),
                Some(o.auctioneer_profit),
                Some(o.committed_win_prob),
                Some(o.worst_player_profit),
            ];
            if mc && !o.baseline {
                let pop = Population::committed(&spec, policy)?;
                let st = estimate_statistic(&spec, &pop, trials, seed, |t| {
                    Some(committed_auctioneer_profit(&spec, policy, t))
                });
                mc_cols = [Some(st.mean), st.se];
            }
        }
    }
    if mc {
        out.extend(mc_cols);
    }
    Ok(out)
}

/// Auctioneer profit in one simulated committed-player auction; the
/// committed player is player 0.
pub fn committed_auctioneer_profit(
    spec: &AuctionSpec,
    policy: CommittedPolicy,
    t: &crate::sim::AuctionTrial,
) -> f64 {
    let v = spec.v();
    let base = t.revenue.as_dollars() - if t.winner.is_some() { v } else { 0.0 };
    if t.winner == Some(0) {
        base
    } else {
        let delta = t.per_player_spend[0].as_dollars();
        base + (policy.retail(spec) - delta) - v
    }
}

/// Realised profit of the committed player (player 0) in one simulated
/// auction.
pub fn committed_player_realised(
    spec: &AuctionSpec,
    policy: CommittedPolicy,
    t: &crate::sim::AuctionTrial,
) -> f64 {
    let v = spec.v();
    if t.winner == Some(0) {
        v - t.per_player_spend[0].as_dollars() - t.final_price.as_dollars()
    } else {
        v - policy.retail(spec)
    }
}

fn point_metadata(command: &str, config: &ScenarioConfig, trials: u64, seed: u64) -> Metadata {
    let canonical = format!("{}trials = {trials}\nseed = {seed}\n", config.to_toml());
    let mut meta = Metadata::new(command, &canonical, Some(seed));
    push_config(&mut meta, config);
    meta.push("trials", trials);
    meta
}

fn push_config(meta: &mut Metadata, config: &ScenarioConfig) {
    meta.push("scenario", config.scenario);
    meta.push(
        "auction",
        match config.auction_type() {
            AuctionType::Fixed => "fixed",
            AuctionType::Ascending => "ascending",
        },
    );
    let params = format!(
        "n={} v={} b={} p={} s={} k={} alpha={} b_a={} b_b={} rho={} l={} identities={} tie_rule={:?} spread={}",
        config.n,
        config.v,
        config.b,
        config.p,
        config.s,
        config.k(),
        config.alpha(),
        config.b_a,
        config.b_b(),
        config.rho,
        config.l,
        config.identities,
        config.tie_rule,
        config.spread
    );
    meta.push("parameters", params.to_lowercase());
}

/// One row for the configuration as given.
pub fn run_point(command: &str, config: &ScenarioConfig, trials: u64, seed: u64) -> Result<Table> {
    let row = evaluate(config, trials, seed)?;
    let mut table = Table::new(
        point_metadata(command, config, trials, seed),
        &columns(config.scenario, trials > 0),
    );
    table.rows.push(row.into_iter().map(Cell::num).collect());
    Ok(table)
}

pub fn run_sweep(spec: &SweepSpec) -> Result<Table> {
    let grid = spec.grid()?;
    // Reject unknown or non-integral parameters before doing any work.
    let mut probe = spec.config.clone();
    for &x in &grid {
        probe.set(&spec.param, x)?;
    }
    let rows: Vec<Vec<Cell>> = grid
        .par_iter()
        .enumerate()
        .map(|(i, &x)| {
            let mut c = spec.config.clone();
            c.set(&spec.param, x)?;
            let values = evaluate(&c, spec.trials, spec.seed.wrapping_add(i as u64))?;
            let mut row = vec![Cell::Num(x)];
            row.extend(values.into_iter().map(Cell::num));
            Ok(row)
        })
        .collect::<Result<_>>()?;
    let mut meta = Metadata::new("sweep", &spec.canonical(), Some(spec.seed));
    push_config(&mut meta, &spec.config);
    meta.push("param", &spec.param);
    meta.push(
        "range",
        format!("{}..={} step {}", spec.from, spec.to, spec.step),
    );
    meta.push("trials", spec.trials);
    let mut cols = vec![spec.param.as_str()];
    cols.extend(columns(spec.config.scenario, spec.trials > 0));
    let mut table = Table::new(meta, &cols);
    table.rows = rows;
    Ok(table)
}
