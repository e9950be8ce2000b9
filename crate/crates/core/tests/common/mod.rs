//! Synthetic outcome tables and probe traces in the wire formats.
#![allow(dead_code)]

use std::fmt::Write as _;

pub const PROBE_EXAMPLE: &str =
    "ct=15|cs=1|ra=0|cw=Schonmir1500|cp=3126|bh=521:Schonmir1500:1:3126:0:#|lui=4#1#0#0";

pub const OUTCOME_EXAMPLE: &str = "259070\t10011706\t300-bids-voucher\t300 Bids Voucher\t180\t31.26\t31.26\t6\t60\tSchonmir1500\t106\t0\t13:29 PDT 12-12-2009\t1\t0\t0\t0\n";

pub const INCREMENT_CENTS: i64 = 6;

/// One bid of a synthetic stream: bidder and unix time.
pub type Bid = (&'static str, f64);

/// Dollars as the site prints them: whole amounts without cents.
fn dollars(cents: i64) -> String {
    if cents % 100 == 0 {
        (cents / 100).to_string()
    } else {
        format!("{}.{:02}", cents / 100, cents % 100)
    }
}

/// A probe line reporting the latest (up to ten) of `bids`, newest first.
pub fn probe_line(bids: &[Bid], status: u32) -> String {
    let n = bids.len();
    let mut bh = String::new();
    for i in (n.saturating_sub(10)..n).rev() {
        let number = i as i64 + 1;
        let _ = write!(
            bh,
            "{}:{}:1:{}:0:#",
            number,
            bids[i].0,
            number * INCREMENT_CENTS
        );
    }
    let (leader, price) = bids
        .last()
        .map_or(("", 0), |b| (b.0, n as i64 * INCREMENT_CENTS));
    format!("ct=10|cs={status}|ra=0|cw={leader}|cp={price}|bh={bh}|lui=0#{n}#0#0")
}

/// Trace rows for one auction: a probe right after every bid, except bids
/// whose index `skip` rejects, and a final ended probe.
pub fn trace_rows(auction_id: u64, bids: &[Bid], skip: impl Fn(usize) -> bool) -> String {
    let mut out = String::new();
    for i in 0..bids.len() {
        if skip(i) {
            continue;
        }
        let _ = writeln!(
            out,
            "{}\t{}\t{}",
            bids[i].1,
            auction_id,
            probe_line(&bids[..=i], 1)
        );
    }
    let end = bids.last().map_or(0.0, |b| b.1) + 10.0;
    let _ = writeln!(out, "{}\t{}\t{}", end, auction_id, probe_line(bids, 20));
    out
}

/// A 17-field outcome row for an ascending auction with 6 cent increments
/// and 60 cent bids.
pub fn outcome_row(
    auction_id: u64,
    item: &str,
    retail_cents: i64,
    bids: &[Bid],
    placed_by_winner: u64,
    click_only: bool,
) -> String {
    let price = bids.len() as i64 * INCREMENT_CENTS;
    let winner = bids.last().map_or("", |b| b.0);
    format!(
        "{auction_id}\t1\t{item}\t{item}\t{}\t{}\t{}\t6\t60\t{winner}\t{placed_by_winner}\t0\t13:29 PDT 12-12-2009\t{}\t0\t0\t0\n",
        dollars(retail_cents),
        dollars(price),
        dollars(price),
        u8::from(click_only)
    )
}

/// `n` bids alternating between `a` and `b`, `gap` seconds apart from `t0`.
pub fn alternating(a: &'static str, b: &'static str, n: usize, t0: f64, gap: f64) -> Vec<Bid> {
    (0..n)
        .map(|i| (if i % 2 == 0 { a } else { b }, t0 + gap * i as f64))
        .collect()
}

pub struct Fixture {
    pub outcomes: String,
    pub traces: String,
}

/// A small corpus:
/// * 1001: opener then a 12-bid duel between `x` and `y`, 2 s apart.
/// * 1002: five bidders, one bid each, early, then a late duel.
/// * 1003: a third bidder interrupting an alternation.
/// * 1004: like 1001 but with a gap in the capture.
/// * 1005, 1006: bidpack auctions, both won by `alice` against `bob`.
pub fn corpus() -> Fixture {
    let mut s1001 = vec![("opener", 0.0)];
    s1001.extend(alternating("x", "y", 12, 2.0, 2.0));

    let mut s1002: Vec<Bid> = ["u1", "u2", "u3", "u4", "u5"]
        .iter()
        .enumerate()
        .map(|(i, u)| (*u, 100.0 * i as f64))
        .collect();
    s1002.extend(alternating("u1", "u2", 6, 3000.0, 5.0));

    let mut s1003 = alternating("p", "q", 8, 0.0, 3.0);
    s1003.push(("r", 30.0));
    s1003.extend(alternating("p", "q", 4, 31.0, 3.0));

    let s1004 = s1001.clone();

    let s1005 = alternating("bob", "alice", 10, 0.0, 4.0);
    let s1006 = alternating("alice", "bob", 9, 0.0, 4.0);

    let mut outcomes = String::new();
    outcomes.push_str(&outcome_row(1001, "ipod", 20000, &s1001, 6, true));
    outcomes.push_str(&outcome_row(1002, "camera", 15000, &s1002, 3, true));
    outcomes.push_str(&outcome_row(1003, "laptop", 90000, &s1003, 7, false));
    outcomes.push_str(&outcome_row(1004, "ipod", 20000, &s1004, 6, true));
    outcomes.push_str(&outcome_row(1005, "50-bids-voucher", 3000, &s1005, 5, true));
    outcomes.push_str(&outcome_row(1006, "50 Bids Voucher", 3000, &s1006, 5, true));

    let mut traces = String::new();
    traces.push_str(&trace_rows(1001, &s1001, |_| false));
    traces.push_str(&trace_rows(1002, &s1002, |_| false));
    traces.push_str(&trace_rows(1003, &s1003, |_| false));
    // Nothing is seen between the first bid and the twelfth, so bids 2 and
    // 3 never appear in any ten-bid window.
    traces.push_str(&trace_rows(1004, &s1004, |i| (1..12).contains(&i)));
    traces.push_str(&trace_rows(1005, &s1005, |_| false));
    traces.push_str(&trace_rows(1006, &s1006, |_| false));
    Fixture { outcomes, traces }
}
