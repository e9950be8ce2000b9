//! Auction outcome tables, live probe traces and the metrics computed from
//! them.
//!
//! Input is handled as ASCII-compatible bytes. Usernames stay opaque byte
//! strings throughout; they are only decoded (lossily) for display.

use std::fmt;

use serde::{Serialize, Serializer};

pub mod metrics;
pub mod outcomes;
pub mod probe;
pub mod reconstruct;

pub use metrics::{
    active_bidder_fraction, aggression_table, bidder_stats, bidpack_cost, ccdf, detect_duels,
    duel_summary, mean_active_fraction, profit_margin, terminal_alternation, ActiveSample,
    AggressionBucket, AggressionTable, AuctionMargin, BidderAuctionStats, BidpackCost, Duel,
    DuelSummary, MarginReport, MetricError, OutcomeClasses, AGGRESSION_THRESHOLD,
    DEFAULT_ACTIVE_WINDOW, DEFAULT_BIDFEE, DEFAULT_DUEL_MIN_LEN, DEFAULT_SAMPLE_INTERVAL,
};
pub use outcomes::{
    parse_outcome_rows, AuctionOutcomeRecord, EndTime, OutcomeOptions, OutcomeParse, RowDiagnostic,
};
pub use probe::{parse_probe_line, BidEvent, BidType, ProbeError, ProbeLine};
pub use reconstruct::{
    group_traces, read_trace_rows, reconstruct_bids, AuctionTrace, Reconstruction, TraceError,
    TraceRow,
};

/// A username exactly as it appeared on the wire.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Username(pub Vec<u8>);

impl Username {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl From<&str> for Username {
    fn from(s: &str) -> Self {
        Username(s.as_bytes().to_vec())
    }
}

impl fmt::Display for Username {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&String::from_utf8_lossy(&self.0))
    }
}

impl fmt::Debug for Username {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", String::from_utf8_lossy(&self.0))
    }
}

impl Serialize for Username {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&String::from_utf8_lossy(&self.0))
    }
}
