//! Empirical metrics over outcome records and reconstructed bid streams.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use super::outcomes::AuctionOutcomeRecord;
use super::probe::BidEvent;
use super::reconstruct::AuctionTrace;
use super::Username;
use crate::money::Cents;

/// Bid fee assumed when a record's own fee is not trusted.
pub const DEFAULT_BIDFEE: Cents = Cents(60);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricError {
    #[error("auction {auction_id}: zero bid increment on an ascending-price auction")]
    ZeroIncrement { auction_id: u64 },
    #[error("empty bid stream")]
    EmptyBidStream,
    #[error("bid stream is incomplete ({missing} bids missing)")]
    Incomplete { missing: u64 },
    #[error("bid {bidnumber} has no timestamp")]
    MissingTimestamp { bidnumber: u64 },
    #[error("no bidpack auctions found")]
    NoBidpacks,
}

fn require_complete(bids: &[BidEvent]) -> Result<(), MetricError> {
    let (Some(first), Some(last)) = (bids.first(), bids.last()) else {
        return Err(MetricError::EmptyBidStream);
    };
    let span = last.bidnumber.saturating_sub(first.bidnumber) + 1;
    let contiguous = bids
        .windows(2)
        .all(|w| w[1].bidnumber == w[0].bidnumber + 1);
    if !contiguous {
        return Err(MetricError::Incomplete {
            missing: span.saturating_sub(bids.len() as u64),
        });
    }
    Ok(())
}

fn timestamp(e: &BidEvent) -> Result<f64, MetricError> {
    e.timestamp.ok_or(MetricError::MissingTimestamp {
        bidnumber: e.bidnumber,
    })
}

// ---------------------------------------------------------------------------
// Profit margins

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuctionMargin {
    pub auction_id: u64,
    pub estimated_bids: u64,
    pub profit: Cents,
    pub retail: Cents,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MarginReport {
    pub auctions: Vec<AuctionMargin>,
    /// Auctions left out, with the reason.
    pub excluded: Vec<(u64, String)>,
    pub total_profit: Cents,
    pub total_retail: Cents,
    /// Total profit over total retail.
    pub aggregate_margin: f64,
}

/// Estimates bids as `price / bidincrement` and profit as
/// `bids * fee + finalprice - retail`. Unsold auctions (price 0) and
/// fixed-price auctions are excluded.
pub fn profit_margin(
    records: &[AuctionOutcomeRecord],
    fee: Cents,
) -> Result<MarginReport, MetricError> {
    let mut auctions = Vec::new();
    let mut excluded = Vec::new();
    for r in records {
        if r.flg_fixedprice {
            excluded.push((r.auction_id, "fixed-price".to_string()));
            continue;
        }
        if r.bidincrement.0 <= 0 {
            return Err(MetricError::ZeroIncrement {
                auction_id: r.auction_id,
            });
        }
        if r.price.0 <= 0 {
            excluded.push((r.auction_id, "unsuccessful".to_string()));
            continue;
        }
        let bids = (r.price.0 / r.bidincrement.0) as u64;
        let profit = fee * bids as i64 + r.finalprice - r.retail;
        let margin = if r.retail.0 > 0 {
            profit.0 as f64 / r.retail.0 as f64
        } else {
            f64::NAN
        };
        auctions.push(AuctionMargin {
            auction_id: r.auction_id,
            estimated_bids: bids,
            profit,
            retail: r.retail,
            margin,
        });
    }
    let total_profit: Cents = auctions.iter().map(|a| a.profit).sum();
    let total_retail: Cents = auctions.iter().map(|a| a.retail).sum();
    let aggregate_margin = if total_retail.0 > 0 {
        total_profit.0 as f64 / total_retail.0 as f64
    } else {
        f64::NAN
    };
    Ok(MarginReport {
        auctions,
        excluded,
        total_profit,
        total_retail,
        aggregate_margin,
    })
}

// ---------------------------------------------------------------------------
// Per-bidder aggression

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct OutcomeClasses {
    pub won: bool,
    pub in_the_black: bool,
    pub in_the_red: bool,
}

impl OutcomeClasses {
    pub fn is_none(&self) -> bool {
        !(self.won || self.in_the_black || self.in_the_red)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BidderAuctionStats {
    pub username: Username,
    pub bids: u64,
    /// Bids that have a predecessor and so a response time.
    pub timed_bids: u64,
    pub total_response: f64,
    pub avg_response_time: Option<f64>,
    /// `bids / avg_response_time`, in bids squared per second.
    pub aggression: f64,
    /// Set when every bid lacked a predecessor; aggression is then 0.
    pub undefined_response: bool,
    pub spend: Cents,
    pub classes: OutcomeClasses,
}

/// Per-bidder statistics for one complete auction. A bid's response time is
/// the delay since the preceding bid by anyone; the auction's first bid has
/// none and is left out of the response sums.
pub fn bidder_stats(
    bids: &[BidEvent],
    retail: Cents,
    finalprice: Cents,
    winner: Option<&Username>,
    fee: Cents,
) -> Result<Vec<BidderAuctionStats>, MetricError> {
    require_complete(bids)?;
    struct Acc {
        bids: u64,
        timed: u64,
        total: f64,
        first_seen: usize,
    }
    let mut acc: HashMap<&Username, Acc> = HashMap::new();
    let mut prev: Option<f64> = None;
    for (i, e) in bids.iter().enumerate() {
        let t = timestamp(e)?;
        let a = acc.entry(&e.username).or_insert(Acc {
            bids: 0,
            timed: 0,
            total: 0.0,
            first_seen: i,
        });
        a.bids += 1;
        if let Some(p) = prev {
            a.timed += 1;
            a.total += t - p;
        }
        prev = Some(t);
    }
    let mut out: Vec<(usize, BidderAuctionStats)> = acc
        .into_iter()
        .map(|(user, a)| {
            let avg = (a.timed > 0).then(|| a.total / a.timed as f64);
            let aggression = match avg {
                None => 0.0,
                Some(avg) if avg <= 0.0 => f64::INFINITY,
                Some(avg) => a.bids as f64 / avg,
            };
            let spend = fee * a.bids as i64;
            let won = winner == Some(user);
            let classes = OutcomeClasses {
                won,
                in_the_black: won && spend + finalprice < retail,
                in_the_red: if won {
                    spend + finalprice - retail > Cents::ZERO
                } else {
                    spend > Cents::ZERO
                },
            };
            (
                a.first_seen,
                BidderAuctionStats {
                    username: user.clone(),
                    bids: a.bids,
                    timed_bids: a.timed,
                    total_response: a.total,
                    avg_response_time: avg,
                    aggression,
                    undefined_response: avg.is_none(),
                    spend,
                    classes,
                },
            )
        })
        .collect();
    out.sort_by_key(|(first, _)| *first);
    Ok(out.into_iter().map(|(_, s)| s).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AggressionBucket {
    /// Aggressive bidders in the auction; the last bucket means "this many or
    /// more".
    pub aggressive_bidders: u32,
    pub auctions: u64,
    pub revenue: Cents,
    pub retail: Cents,
    /// Total revenue over total retail.
    pub revenue_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AggressionTable {
    pub threshold: f64,
    pub buckets: Vec<AggressionBucket>,
    pub skipped_incomplete: u64,
    pub skipped_filtered: u64,
    pub skipped_untraced: u64,
}

pub const AGGRESSION_THRESHOLD: f64 = 3.0;

/// Buckets click-only auctions by how many bidders exceeded `threshold`
/// aggression (0, 1, 2 or more) and reports revenue relative to retail.
/// Revenue is `bids * fee + finalprice` from the traced stream.
pub fn aggression_table(
    records: &[AuctionOutcomeRecord],
    traces: &[AuctionTrace],
    threshold: f64,
    fee: Cents,
) -> AggressionTable {
    let by_id: HashMap<u64, &AuctionTrace> = traces
        .iter()
        .filter_map(|t| t.auction_id.map(|id| (id, t)))
        .collect();
    let mut buckets: Vec<AggressionBucket> = (0..3)
        .map(|k| AggressionBucket {
            aggressive_bidders: k,
            auctions: 0,
            revenue: Cents::ZERO,
            retail: Cents::ZERO,
            revenue_ratio: f64::NAN,
        })
        .collect();
    let (mut incomplete, mut filtered, mut untraced) = (0, 0, 0);
    for r in records {
        if !r.flg_click_only {
            filtered += 1;
            continue;
        }
        let Some(trace) = by_id.get(&r.auction_id) else {
            untraced += 1;
            continue;
        };
        if trace.missing > 0 {
            incomplete += 1;
            continue;
        }
        let winner = (!r.winner.0.is_empty()).then_some(&r.winner);
        let Ok(stats) = bidder_stats(&trace.bids, r.retail, r.finalprice, winner, fee) else {
            incomplete += 1;
            continue;
        };
        let aggressive = stats
            .iter()
            .filter(|s| s.aggression > threshold)
            .count()
            .min(2);
        let b = &mut buckets[aggressive];
        b.auctions += 1;
        b.revenue += fee * trace.bids.len() as i64 + r.finalprice;
        b.retail += r.retail;
    }
    for b in &mut buckets {
        if b.retail.0 > 0 {
            b.revenue_ratio = b.revenue.0 as f64 / b.retail.0 as f64;
        }
    }
    AggressionTable {
        threshold,
        buckets,
        skipped_incomplete: incomplete,
        skipped_filtered: filtered,
        skipped_untraced: untraced,
    }
}

/// Empirical complementary CDF: each distinct value with `P(X >= x)`.
/// Non-finite values sort last.
pub fn ccdf(values: &[f64]) -> Vec<(f64, f64)> {
    let mut v: Vec<f64> = values.iter().copied().filter(|x| !x.is_nan()).collect();
    v.sort_by(f64::total_cmp);
    let n = v.len() as f64;
    let mut out = Vec::new();
    let mut i = 0;
    while i < v.len() {
        let x = v[i];
        out.push((x, (v.len() - i) as f64 / n));
        while i < v.len() && v[i] == x {
            i += 1;
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Duels

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Duel {
    pub length: u64,
    pub participants: (Username, Username),
}

/// Length of the longest strictly alternating two-bidder suffix, with its
/// participants (last bidder first).
pub fn terminal_alternation(bids: &[BidEvent]) -> Option<Duel> {
    let n = bids.len();
    if n < 2 {
        return None;
    }
    let (x, y) = (&bids[n - 1].username, &bids[n - 2].username);
    if x == y {
        return None;
    }
    let mut len = 2;
    while len < n {
        let expect = if len % 2 == 0 { x } else { y };
        if &bids[n - 1 - len].username != expect {
            break;
        }
        len += 1;
    }
    Some(Duel {
        length: len as u64,
        participants: (x.clone(), y.clone()),
    })
}

/// The terminal duel, if it is at least `min_len` bids long.
pub fn detect_duels(bids: &[BidEvent], min_len: u64) -> Option<Duel> {
    terminal_alternation(bids).filter(|d| d.length >= min_len)
}

pub const DEFAULT_DUEL_MIN_LEN: u64 = 10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DuelSummary {
    pub auctions: u64,
    pub skipped_incomplete: u64,
    /// Terminal alternation length per complete auction (0 if none).
    pub lengths: Vec<(Option<u64>, u64)>,
    /// `(threshold, fraction of auctions with a duel at least that long)`.
    pub at_least: Vec<(u64, f64)>,
    pub longest: u64,
}

pub fn duel_summary(traces: &[AuctionTrace], thresholds: &[u64]) -> DuelSummary {
    let mut lengths = Vec::new();
    let mut skipped = 0;
    for t in traces {
        if t.missing > 0 || t.bids.is_empty() {
            skipped += 1;
            continue;
        }
        let len = terminal_alternation(&t.bids).map_or(0, |d| d.length);
        lengths.push((t.auction_id, len));
    }
    let n = lengths.len() as f64;
    let at_least = thresholds
        .iter()
        .map(|&k| {
            let c = lengths.iter().filter(|(_, l)| *l >= k).count() as f64;
            (k, if n > 0.0 { c / n } else { f64::NAN })
        })
        .collect();
    DuelSummary {
        auctions: lengths.len() as u64,
        skipped_incomplete: skipped,
        longest: lengths.iter().map(|(_, l)| *l).max().unwrap_or(0),
        lengths,
        at_least,
    }
}

// ---------------------------------------------------------------------------
// Active bidders

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ActiveSample {
    pub seconds_before_end: f64,
    pub fraction: f64,
}

pub const DEFAULT_SAMPLE_INTERVAL: f64 = 60.0;
pub const DEFAULT_ACTIVE_WINDOW: f64 = 900.0;

fn fraction_at(bids: &[BidEvent], t: f64, window: f64, total: usize) -> Result<f64, MetricError> {
    let mut active = BTreeSet::new();
    for e in bids {
        let ts = timestamp(e)?;
        if ts > t - window && ts <= t {
            active.insert(&e.username);
        }
    }
    Ok(active.len() as f64 / total as f64)
}

/// Fraction of the auction's bidders who bid in the `window` seconds before
/// each sample time. Samples run back from `auction_end` every `interval`
/// seconds for `horizon` seconds.
pub fn active_bidder_fraction(
    bids: &[BidEvent],
    auction_end: f64,
    interval: f64,
    window: f64,
    horizon: f64,
) -> Result<Vec<ActiveSample>, MetricError> {
    require_complete(bids)?;
    let total = bids
        .iter()
        .map(|e| &e.username)
        .collect::<BTreeSet<_>>()
        .len();
    let steps = (horizon / interval).floor() as u64;
    let mut out = Vec::with_capacity(steps as usize + 1);
    for k in (0..=steps).rev() {
        let before = k as f64 * interval;
        out.push(ActiveSample {
            seconds_before_end: before,
            fraction: fraction_at(bids, auction_end - before, window, total)?,
        });
    }
    Ok(out)
}

/// Average over complete traces of the active fraction `seconds_before_end`
/// seconds before the last bid. Returns the mean and the number of auctions
/// used.
pub fn mean_active_fraction(
    traces: &[AuctionTrace],
    seconds_before_end: f64,
    window: f64,
) -> Option<(f64, u64)> {
    let mut sum = 0.0;
    let mut n = 0u64;
    for t in traces {
        if t.missing > 0 || require_complete(&t.bids).is_err() {
            continue;
        }
        let Some(end) = t.bids.last().and_then(|e| e.timestamp) else {
            continue;
        };
        let total = t
            .bids
            .iter()
            .map(|e| &e.username)
            .collect::<BTreeSet<_>>()
            .len();
        if let Ok(f) = fraction_at(&t.bids, end - seconds_before_end, window, total) {
            sum += f;
            n += 1;
        }
    }
    (n > 0).then(|| (sum / n as f64, n))
}

// ---------------------------------------------------------------------------
// Bidpacks

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BidpackCost {
    pub packs_won: u64,
    pub won_retail: Cents,
    /// Winners' bid fees plus final price in the packs they won.
    pub winning_spend: Cents,
    /// Bid fees the same winners spent in bidpack auctions they lost.
    pub losing_spend: Cents,
    /// `winning_spend / won_retail`.
    pub cost_fraction: f64,
    /// `(winning_spend + losing_spend) / won_retail`.
    pub cost_fraction_with_losses: f64,
}

/// What bidpack winners paid, relative to the packs' retail value. Winning
/// spend uses each record's `placedbids` and `bidfee`; losses come from
/// `traces`, matched to records by auction id.
pub fn bidpack_cost(
    records: &[AuctionOutcomeRecord],
    traces: &[AuctionTrace],
) -> Result<BidpackCost, MetricError> {
    let packs: Vec<&AuctionOutcomeRecord> = records.iter().filter(|r| r.is_bidpack()).collect();
    let won: Vec<&&AuctionOutcomeRecord> =
        packs.iter().filter(|r| !r.winner.0.is_empty()).collect();
    if won.is_empty() {
        return Err(MetricError::NoBidpacks);
    }
    let winners: BTreeSet<&Username> = won.iter().map(|r| &r.winner).collect();
    let won_retail: Cents = won.iter().map(|r| r.retail).sum();
    let winning_spend: Cents = won
        .iter()
        .map(|r| r.bidfee * r.placedbids as i64 + r.finalprice)
        .sum();
    let pack_by_id: BTreeMap<u64, &AuctionOutcomeRecord> =
        packs.iter().map(|r| (r.auction_id, *r)).collect();
    let mut losing_spend = Cents::ZERO;
    for t in traces {
        let Some(r) = t.auction_id.and_then(|id| pack_by_id.get(&id)) else {
            continue;
        };
        for e in &t.bids {
            if winners.contains(&e.username) && e.username != r.winner {
                losing_spend += r.bidfee;
            }
        }
    }
    let denom = won_retail.0 as f64;
    Ok(BidpackCost {
        packs_won: won.len() as u64,
        won_retail,
        winning_spend,
        losing_spend,
        cost_fraction: winning_spend.0 as f64 / denom,
        cost_fraction_with_losses: (winning_spend + losing_spend).0 as f64 / denom,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trace::outcomes::EndTime;
    use crate::trace::BidType;

    fn bid(n: u64, user: &str, t: f64) -> BidEvent {
        BidEvent {
            bidnumber: n,
            username: Username::from(user),
            bidtype: BidType::Player,
            price: Cents(n as i64 * 6),
            yourbid: false,
            timestamp: Some(t),
        }
    }

    pub(crate) fn record(
        id: u64,
        item: &str,
        retail: i64,
        price: i64,
        winner: &str,
        placed: u64,
    ) -> AuctionOutcomeRecord {
        AuctionOutcomeRecord {
            auction_id: id,
            product_id: 1,
            item: item.into(),
            desc: item.into(),
            retail: Cents(retail),
            price: Cents(price),
            finalprice: Cents(price),
            bidincrement: Cents(6),
            bidfee: Cents(60),
            winner: Username::from(winner),
            placedbids: placed,
            freebids: 0,
            endtime: EndTime::parse("13:29 PDT 12-12-2009").unwrap(),
            flg_click_only: true,
            flg_beginnerauction: false,
            flg_fixedprice: false,
            flg_endprice: false,
        }
    }

    #[test]
    fn margin_of_the_example_row() {
        let r = record(259070, "300-bids-voucher", 18000, 3126, "Schonmir1500", 106);
        let m = profit_margin(std::slice::from_ref(&r), DEFAULT_BIDFEE).unwrap();
        assert_eq!(m.auctions[0].estimated_bids, 521);
        assert_eq!(m.auctions[0].profit, Cents(16386));
        assert!((m.aggregate_margin - 0.9103).abs() < 1e-3);
        let zero = profit_margin(&[r], Cents::ZERO).unwrap();
        assert_eq!(zero.total_profit, Cents(3126 - 18000));
    }

    #[test]
    fn margin_exclusions_and_errors() {
        let unsold = record(1, "tv", 5000, 0, "", 0);
        let m = profit_margin(&[unsold], DEFAULT_BIDFEE).unwrap();
        assert!(m.auctions.is_empty());
        assert_eq!(m.excluded[0].1, "unsuccessful");
        let mut bad = record(2, "tv", 5000, 100, "x", 1);
        bad.bidincrement = Cents::ZERO;
        assert_eq!(
            profit_margin(&[bad], DEFAULT_BIDFEE),
            Err(MetricError::ZeroIncrement { auction_id: 2 })
        );
    }

    #[test]
    fn aggression_of_ten_bids_two_seconds_apart() {
        // "z" opens, then "a" and "b" alternate at two-second spacing.
        let bids: Vec<BidEvent> = (0..20)
            .map(|i| {
                let user = if i == 0 {
                    "z"
                } else if i % 2 == 1 {
                    "a"
                } else {
                    "b"
                };
                bid(i + 1, user, 2.0 * i as f64)
            })
            .collect();
        let stats = bidder_stats(&bids, Cents(1000), Cents(100), None, DEFAULT_BIDFEE).unwrap();
        let a = stats
            .iter()
            .find(|s| s.username == Username::from("a"))
            .unwrap();
        assert_eq!(a.bids, 10);
        assert_eq!(a.avg_response_time, Some(2.0));
        assert!((a.aggression - 5.0).abs() < 1e-12);
        let z = stats
            .iter()
            .find(|s| s.username == Username::from("z"))
            .unwrap();
        assert!(z.undefined_response);
        assert_eq!(z.aggression, 0.0);
    }

    #[test]
    fn outcome_classes() {
        let bids = vec![bid(1, "a", 0.0), bid(2, "b", 1.0), bid(3, "a", 2.0)];
        let s = bidder_stats(
            &bids,
            Cents(1000),
            Cents(18),
            Some(&Username::from("a")),
            DEFAULT_BIDFEE,
        )
        .unwrap();
        assert!(s[0].classes.won && s[0].classes.in_the_black && !s[0].classes.in_the_red);
        assert!(!s[1].classes.won && s[1].classes.in_the_red);
        let pricey = bidder_stats(
            &bids,
            Cents(100),
            Cents(18),
            Some(&Username::from("a")),
            DEFAULT_BIDFEE,
        )
        .unwrap();
        assert!(
            pricey[0].classes.won
                && !pricey[0].classes.in_the_black
                && pricey[0].classes.in_the_red
        );
        assert!(OutcomeClasses::default().is_none());
    }

    #[test]
    fn incomplete_stream_refused() {
        let bids = vec![bid(1, "a", 0.0), bid(3, "b", 1.0)];
        assert_eq!(
            bidder_stats(&bids, Cents(1), Cents(1), None, DEFAULT_BIDFEE),
            Err(MetricError::Incomplete { missing: 1 })
        );
    }

    #[test]
    fn duel_tail() {
        let mut bids: Vec<BidEvent> = vec![bid(1, "c", 0.0), bid(2, "d", 1.0), bid(3, "c", 2.0)];
        for i in 0..12 {
            bids.push(bid(
                4 + i,
                if i % 2 == 0 { "x" } else { "y" },
                3.0 + i as f64,
            ));
        }
        let d = detect_duels(&bids, 10).unwrap();
        assert_eq!(d.length, 12);
        assert_eq!(d.participants, (Username::from("y"), Username::from("x")));
        assert!(detect_duels(&bids, 13).is_none());
        // An intruder restarts the suffix.
        let mut with_intruder = bids.clone();
        with_intruder.insert(10, bid(0, "q", 0.0));
        assert_eq!(terminal_alternation(&with_intruder).unwrap().length, 5);
    }

    #[test]
    fn active_fraction_with_late_bids() {
        let bids: Vec<BidEvent> = (0..5)
            .map(|i| bid(i + 1, &format!("u{i}"), 1000.0 + i as f64 * 10.0))
            .collect();
        let s = active_bidder_fraction(&bids, 1050.0, 60.0, 60.0, 300.0).unwrap();
        assert_eq!(s.last().unwrap().fraction, 1.0);
        assert!(s[..s.len() - 1].iter().all(|x| x.fraction == 0.0));
        assert_eq!(
            active_bidder_fraction(&[], 0.0, 60.0, 900.0, 0.0),
            Err(MetricError::EmptyBidStream)
        );
    }

    #[test]
    fn bidpack_costs() {
        let free = record(1, "90 Bids Voucher", 5400, 5400, "w", 0);
        let c = bidpack_cost(&[free], &[]).unwrap();
        assert!((c.cost_fraction - 1.0).abs() < 1e-12);
        let mut cheap = record(2, "150-bids-voucher", 9000, 600, "w", 40);
        cheap.bidfee = Cents(60);
        let c = bidpack_cost(&[cheap], &[]).unwrap();
        assert!((c.cost_fraction - 3000.0 / 9000.0).abs() < 1e-12);
        assert_eq!(
            bidpack_cost(&[record(3, "tv", 1, 1, "w", 1)], &[]),
            Err(MetricError::NoBidpacks)
        );
    }

    #[test]
    fn bidpack_losses_from_traces() {
        let won = record(1, "50 bids voucher", 3000, 600, "w", 10);
        let lost = record(2, "50 bids voucher", 3000, 600, "other", 10);
        let trace = AuctionTrace {
            auction_id: Some(2),
            bids: vec![bid(1, "w", 0.0), bid(2, "other", 1.0), bid(3, "w", 2.0)],
            missing: 0,
            ended: true,
        };
        let c = bidpack_cost(&[won, lost], &[trace]).unwrap();
        assert_eq!(c.losing_spend, Cents(120));
        assert_eq!(c.winning_spend, Cents(2400));
        assert_eq!(c.packs_won, 2);
    }

    #[test]
    fn ccdf_is_right_continuous_from_above() {
        let c = ccdf(&[1.0, 2.0, 2.0, 5.0]);
        assert_eq!(c, vec![(1.0, 1.0), (2.0, 0.75), (5.0, 0.25)]);
    }
}
