//! Parse an outcome row and a short probe trace, then compute margins and
//! per-bidder aggression.

use paybid::trace::{
    bidder_stats, group_traces, parse_outcome_rows, profit_margin, read_trace_rows, OutcomeOptions,
    DEFAULT_BIDFEE,
};

const OUTCOMES: &str =
    "42\t1\tipod\tiPod\t200\t0.30\t0.30\t6\t60\tbob\t3\t0\t21:05 PST 01-15-2010\t1\t0\t0\t0\n";

const TRACE: &str = "\
100.0\t42\tct=9|cs=1|ra=0|cw=alice|cp=6|bh=1:alice:1:6:0:#|lui=0#0#0#0
101.5\t42\tct=9|cs=1|ra=0|cw=bob|cp=12|bh=2:bob:1:12:0:#1:alice:1:6:0:#|lui=0#0#0#0
103.0\t42\tct=9|cs=1|ra=0|cw=alice|cp=18|bh=3:alice:1:18:0:#2:bob:1:12:0:#1:alice:1:6:0:#|lui=0#0#0#0
104.5\t42\tct=9|cs=1|ra=0|cw=bob|cp=24|bh=4:bob:1:24:0:#3:alice:1:18:0:#|lui=0#0#0#0
106.0\t42\tct=9|cs=1|ra=0|cw=bob|cp=30|bh=5:bob:2:30:0:#4:bob:1:24:0:#|lui=0#0#0#0
116.0\t42\tct=0|cs=20|ra=0|cw=bob|cp=30|bh=5:bob:2:30:0:#4:bob:1:24:0:#|lui=0#0#0#0
";

fn main() -> anyhow::Result<()> {
    let records = parse_outcome_rows(OUTCOMES.as_bytes(), OutcomeOptions::default()).records;
    let margins = profit_margin(&records, DEFAULT_BIDFEE)?;
    for a in &margins.auctions {
        println!(
            "auction {}: {} bids, profit {}, margin {:.3}",
            a.auction_id, a.estimated_bids, a.profit, a.margin
        );
    }

    let traces = group_traces(&read_trace_rows(TRACE.as_bytes())?)?;
    let t = &traces[0];
    println!(
        "reconstructed {} bids, {} missing, ended: {}",
        t.bids.len(),
        t.missing,
        t.ended
    );
    let r = &records[0];
    for s in bidder_stats(
        &t.bids,
        r.retail,
        r.finalprice,
        Some(&r.winner),
        DEFAULT_BIDFEE,
    )? {
        println!(
            "  {:<6} bids {}  avg response {:?}  aggression {:.3}  spend {}  won {}",
            s.username.to_string(),
            s.bids,
            s.avg_response_time,
            s.aggression,
            s.spend,
            s.classes.won
        );
    }
    Ok(())
}
