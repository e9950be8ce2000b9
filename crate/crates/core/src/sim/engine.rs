use rand::Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;
use serde::Serialize;

use super::policy::{BidContext, BidRule, Population};
use super::rng::{trial_rng, TrialRng};
use crate::markov::{Group, Pricing};
use crate::model::AuctionSpec;
use crate::money::Cents;

/// Safety cap on bids per trial; reaching it marks the trial truncated.
pub const DEFAULT_MAX_BIDS: u64 = 10_000_000;

const CHUNK: u64 = 2048;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuctionTrial {
    pub winner: Option<u32>,
    pub winner_group: Option<Group>,
    pub total_bids: u64,
    /// Fees collected plus the final price if the winner pays it.
    pub revenue: Cents,
    pub final_price: Cents,
    pub per_player_spend: Vec<Cents>,
    pub trajectory: Option<Vec<u32>>,
    pub truncated: bool,
}

impl AuctionTrial {
    pub fn succeeded(&self) -> bool {
        self.winner.is_some()
    }
}

fn price_cents(pricing: Pricing, bids: u64) -> Cents {
    match pricing {
        Pricing::Ascending { increment } => Cents(increment.0 * bids as i64),
        Pricing::Fixed { price } => price,
    }
}

/// Plays one auction with the given generator.
pub fn simulate_with(
    spec: &AuctionSpec,
    pop: &Population,
    rng: &mut TrialRng,
    record_trajectory: bool,
    max_bids: u64,
) -> AuctionTrial {
    let pricing = Pricing::from(spec.kind);
    let offsets = pop.offsets();
    let mut spend = vec![Cents::ZERO; pop.size() as usize];
    let mut trajectory = record_trajectory.then(Vec::new);
    let mut heads = vec![0u64; pop.classes.len()];
    let mut individual: Vec<u32> = Vec::new();
    let mut leader: Option<(usize, u32)> = None;
    let mut bids = 0u64;
    let mut truncated = false;

    loop {
        if bids >= max_bids {
            truncated = true;
            break;
        }
        let q = bids + 1;
        let leader_group = leader.map(|(c, _)| pop.classes[c].group);
        individual.clear();
        let mut total = 0u64;
        for (ci, class) in pop.classes.iter().enumerate() {
            let leader_here = leader.filter(|&(c, _)| c == ci).map(|(_, m)| m);
            let excluded = leader_here.filter(|_| !class.rebids_when_leading);
            let h = match &class.rule {
                BidRule::Shared(beta) => {
                    let eligible = class.size - u32::from(excluded.is_some());
                    let p = beta(q, leader_group);
                    sample_heads(rng, eligible, p)
                }
                BidRule::PerPlayer(rule) => {
                    let start = individual.len();
                    for m in 0..class.size {
                        if excluded == Some(m) {
                            continue;
                        }
                        let ctx = BidContext {
                            q,
                            am_leader: leader_here == Some(m),
                            leader_group,
                            my_spend: spend[(offsets[ci] + m) as usize],
                        };
                        let p = rule(&ctx);
                        if p >= 1.0 || (p > 0.0 && rng.random::<f64>() < p) {
                            individual.push(m);
                        }
                    }
                    (individual.len() - start) as u64
                }
            };
            heads[ci] = h;
            total += h;
        }
        if total == 0 {
            break;
        }
        let mut ticket = rng.random_range(0..total);
        let mut chosen = None;
        let mut individual_seen = 0usize;
        for (ci, class) in pop.classes.iter().enumerate() {
            if ticket < heads[ci] {
                let member = match class.rule {
                    BidRule::Shared(_) => {
                        let leader_here = leader.filter(|&(c, _)| c == ci).map(|(_, m)| m);
                        match leader_here.filter(|_| !class.rebids_when_leading) {
                            Some(skip) => {
                                let m = rng.random_range(0..class.size - 1);
                                if m >= skip {
                                    m + 1
                                } else {
                                    m
                                }
                            }
                            None => rng.random_range(0..class.size),
                        }
                    }
                    BidRule::PerPlayer(_) => individual[individual_seen + ticket as usize],
                };
                chosen = Some((ci, member));
                break;
            }
            ticket -= heads[ci];
            if matches!(class.rule, BidRule::PerPlayer(_)) {
                individual_seen += heads[ci] as usize;
            }
        }
        let (ci, member) = chosen.expect("ticket falls inside some class");
        let id = offsets[ci] + member;
        spend[id as usize] += pop.classes[ci].fee;
        if let Some(t) = trajectory.as_mut() {
            t.push(id);
        }
        leader = Some((ci, member));
        bids += 1;
    }

    let fees: Cents = spend.iter().copied().sum();
    let (winner, winner_group, price, revenue) = match leader {
        Some((ci, member)) => {
            let class = &pop.classes[ci];
            let price = price_cents(pricing, bids);
            let revenue = if class.pays_price { fees + price } else { fees };
            (
                Some(offsets[ci] + member),
                Some(class.group),
                price,
                revenue,
            )
        }
        None => (None, None, Cents::ZERO, Cents::ZERO),
    };
    AuctionTrial {
        winner,
        winner_group,
        total_bids: bids,
        revenue,
        final_price: price,
        per_player_spend: spend,
        trajectory,
        truncated,
    }
}

fn sample_heads(rng: &mut TrialRng, eligible: u32, p: f64) -> u64 {
    if eligible == 0 || p <= 0.0 {
        return 0;
    }
    if p >= 1.0 {
        return eligible as u64;
    }
    if eligible == 1 {
        return u64::from(rng.random::<f64>() < p);
    }
    Binomial::new(eligible as u64, p)
        .expect("p lies in (0, 1)")
        .sample(rng)
}

/// Plays trial number `trial` of a run seeded with `seed`.
pub fn simulate_one(spec: &AuctionSpec, pop: &Population, seed: u64, trial: u64) -> AuctionTrial {
    let mut rng = trial_rng(seed, trial);
    simulate_with(spec, pop, &mut rng, false, DEFAULT_MAX_BIDS)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateResult {
    pub trials: u64,
    pub seed: u64,
    pub successes: u64,
    /// Mean revenue over successful trials.
    pub mean_revenue: f64,
    /// Standard error of `mean_revenue`; absent with fewer than two
    /// successful trials.
    pub se: Option<f64>,
    /// Win frequency of groups A and B among successful trials.
    pub win_prob_by_group: [f64; 2],
    /// Standard errors of the win frequencies.
    pub win_se: Option<[f64; 2]>,
    pub mean_bids: f64,
    pub truncated: u64,
}

#[derive(Default, Clone, Copy)]
struct Partial {
    successes: u64,
    revenue: i128,
    revenue_sq: i128,
    wins: [u64; 2],
    bids: u128,
    truncated: u64,
}

impl Partial {
    fn merge(mut self, o: Partial) -> Partial {
        self.successes += o.successes;
        self.revenue += o.revenue;
        self.revenue_sq += o.revenue_sq;
        self.wins[0] += o.wins[0];
        self.wins[1] += o.wins[1];
        self.bids += o.bids;
        self.truncated += o.truncated;
        self
    }
}

fn chunks(trials: u64) -> Vec<(u64, u64)> {
    (0..trials.div_ceil(CHUNK))
        .map(|c| (c * CHUNK, ((c + 1) * CHUNK).min(trials)))
        .collect()
}

/// Runs `trials` independent auctions and aggregates revenue, winners and
/// lengths. Integer sums make the result independent of thread scheduling.
pub fn estimate(spec: &AuctionSpec, pop: &Population, trials: u64, seed: u64) -> EstimateResult {
    let partials: Vec<Partial> = chunks(trials)
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut p = Partial::default();
            for t in lo..hi {
                let trial = simulate_one(spec, pop, seed, t);
                p.truncated += u64::from(trial.truncated);
                let Some(group) = trial.winner_group else {
                    continue;
                };
                p.successes += 1;
                let r = trial.revenue.0 as i128;
                p.revenue += r;
                p.revenue_sq += r * r;
                p.wins[group as usize] += 1;
                p.bids += trial.total_bids as u128;
            }
            p
        })
        .collect();
    let total = partials
        .into_iter()
        .fold(Partial::default(), Partial::merge);
    let s = total.successes;
    let (mean, se) = if s == 0 {
        (f64::NAN, None)
    } else {
        let mean_cents = total.revenue as f64 / s as f64;
        let se = (s >= 2).then(|| {
            let var =
                (total.revenue_sq as f64 - s as f64 * mean_cents * mean_cents) / (s - 1) as f64;
            (var.max(0.0) / s as f64).sqrt() / 100.0
        });
        (mean_cents / 100.0, se)
    };
    let win = |g: usize| {
        if s == 0 {
            f64::NAN
        } else {
            total.wins[g] as f64 / s as f64
        }
    };
    let win_prob = [win(0), win(1)];
    let win_se = (s >= 2).then(|| win_prob.map(|p| (p * (1.0 - p) / s as f64).sqrt()));
    EstimateResult {
        trials,
        seed,
        successes: s,
        mean_revenue: mean,
        se,
        win_prob_by_group: win_prob,
        win_se,
        mean_bids: if s == 0 {
            f64::NAN
        } else {
            total.bids as f64 / s as f64
        },
        truncated: total.truncated,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StatSummary {
    pub count: u64,
    pub mean: f64,
    pub se: Option<f64>,
    pub min: f64,
    pub max: f64,
}

#[derive(Clone, Copy)]
struct StatPartial {
    count: u64,
    sum: f64,
    sum_sq: f64,
    min: f64,
    max: f64,
}

/// Mean, standard error and range of a per-trial statistic; trials for
/// which `stat` returns `None` are skipped. Chunks are combined in a fixed
/// order so the floating-point result is reproducible.
pub fn estimate_statistic<F>(
    spec: &AuctionSpec,
    pop: &Population,
    trials: u64,
    seed: u64,
    stat: F,
) -> StatSummary
where
    F: Fn(&AuctionTrial) -> Option<f64> + Sync,
{
    let partials: Vec<StatPartial> = chunks(trials)
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut p = StatPartial {
                count: 0,
                sum: 0.0,
                sum_sq: 0.0,
                min: f64::INFINITY,
                max: f64::NEG_INFINITY,
            };
            for t in lo..hi {
                if let Some(x) = stat(&simulate_one(spec, pop, seed, t)) {
                    p.count += 1;
                    p.sum += x;
                    p.sum_sq += x * x;
                    p.min = p.min.min(x);
                    p.max = p.max.max(x);
                }
            }
            p
        })
        .collect();
    let mut t = StatPartial {
        count: 0,
        sum: 0.0,
        sum_sq: 0.0,
        min: f64::INFINITY,
        max: f64::NEG_INFINITY,
    };
    for p in partials {
        t.count += p.count;
        t.sum += p.sum;
        t.sum_sq += p.sum_sq;
        t.min = t.min.min(p.min);
        t.max = t.max.max(p.max);
    }
    let n = t.count as f64;
    let mean = if t.count == 0 { f64::NAN } else { t.sum / n };
    let se =
        (t.count >= 2).then(|| (((t.sum_sq - n * mean * mean) / (n - 1.0)).max(0.0) / n).sqrt());
    StatSummary {
        count: t.count,
        mean,
        se,
        min: t.min,
        max: t.max,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::markov::constant_beta;
    use crate::sim::PlayerClass;

    fn fixed_population(probs: &[f64]) -> Population {
        Population::new(
            probs
                .iter()
                .map(|&p| PlayerClass::shared(Group::B, 1, Cents(100), constant_beta(p, p)))
                .collect(),
        )
    }

    #[test]
    fn nobody_bids() {
        let spec = AuctionSpec::ascending_defaults();
        let t = simulate_one(&spec, &fixed_population(&[0.0, 0.0, 0.0]), 1, 0);
        assert_eq!(t.winner, None);
        assert_eq!(t.revenue, Cents::ZERO);
        assert_eq!(t.total_bids, 0);
    }

    #[test]
    fn lone_sure_bidder() {
        let spec = AuctionSpec::ascending_defaults();
        let t = simulate_one(&spec, &fixed_population(&[0.0, 1.0, 0.0]), 1, 0);
        assert_eq!(t.winner, Some(1));
        assert_eq!(t.total_bids, 1);
        assert_eq!(t.revenue, Cents(125));
    }

    #[test]
    fn revenue_is_spend_plus_price() {
        let spec = AuctionSpec::ascending_defaults();
        let pop = Population::symmetric(&spec);
        for trial in 0..200 {
            let t = simulate_one(&spec, &pop, 9, trial);
            let spend: Cents = t.per_player_spend.iter().copied().sum();
            if t.succeeded() {
                assert_eq!(t.revenue, spend + t.final_price);
                assert_eq!(t.final_price, Cents(25 * t.total_bids as i64));
            }
        }
    }

    #[test]
    fn single_trial_has_no_se() {
        let spec = AuctionSpec::fixed_defaults();
        let e = estimate(&spec, &Population::symmetric(&spec), 1, 5);
        assert_eq!(e.se, None);
    }

    #[test]
    fn deterministic_under_seed() {
        let spec = AuctionSpec::fixed_defaults();
        let pop = Population::symmetric(&spec);
        assert_eq!(
            estimate(&spec, &pop, 5000, 42),
            estimate(&spec, &pop, 5000, 42)
        );
        assert_ne!(
            estimate(&spec, &pop, 5000, 42),
            estimate(&spec, &pop, 5000, 43)
        );
    }

    #[test]
    fn leader_never_outbids_himself() {
        let spec = AuctionSpec::ascending_defaults();
        let pop = fixed_population(&[1.0, 1.0]);
        let mut rng = trial_rng(3, 0);
        let t = simulate_with(&spec, &pop, &mut rng, true, 50);
        let path = t.trajectory.unwrap();
        assert!(t.truncated);
        assert!(path.windows(2).all(|w| w[0] != w[1]));
    }
}
