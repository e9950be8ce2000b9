//! Trace files and reconstruction of full bid streams from overlapping
//! probe snapshots.
//!
//! A trace row is `observed_at<TAB>probe` or
//! `observed_at<TAB>auction_id<TAB>probe`, where `observed_at` is the
//! collector's unix time in seconds.

use std::collections::BTreeMap;
use std::io::BufRead;

use serde::Serialize;
use thiserror::Error;

use super::probe::{parse_probe_line, BidEvent, ProbeError, ProbeLine};

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("line {line}: {source}")]
    Probe {
        line: u64,
        #[source]
        source: ProbeError,
    },
    #[error("line {line}: {message}")]
    Row { line: u64, message: String },
    #[error("probe {probe}: bid {bidnumber} arrived after bid {max} was already seen")]
    NonMonotone {
        probe: usize,
        bidnumber: u64,
        max: u64,
    },
    #[error("probes out of observation order at probe {probe}")]
    Unsorted { probe: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub observed_at: f64,
    pub auction_id: Option<u64>,
    pub probe: ProbeLine,
}

/// Reads one trace row per non-empty line.
pub fn read_trace_rows<R: BufRead>(mut reader: R) -> Result<Vec<TraceRow>, TraceError> {
    let mut rows = Vec::new();
    let mut buf = Vec::new();
    let mut line = 0u64;
    loop {
        buf.clear();
        if reader.read_until(b'\n', &mut buf)? == 0 {
            break;
        }
        line += 1;
        let raw = buf.strip_suffix(b"\n").unwrap_or(&buf);
        let raw = raw.strip_suffix(b"\r").unwrap_or(raw);
        if raw.is_empty() {
            continue;
        }
        let row_err = |message: &str| TraceError::Row {
            line,
            message: message.to_string(),
        };
        let mut cols = raw.splitn(3, |&c| c == b'\t');
        let ts = cols.next().unwrap_or_default();
        let observed_at: f64 = std::str::from_utf8(ts)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .filter(|t: &f64| t.is_finite())
            .ok_or_else(|| row_err("bad observed_at timestamp"))?;
        let second = cols.next().ok_or_else(|| row_err("missing probe column"))?;
        let (auction_id, probe_bytes) = match cols.next() {
            Some(rest) => {
                let id = std::str::from_utf8(second)
                    .ok()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| row_err("bad auction id"))?;
                (Some(id), rest)
            }
            None => (None, second),
        };
        let probe =
            parse_probe_line(probe_bytes).map_err(|source| TraceError::Probe { line, source })?;
        rows.push(TraceRow {
            observed_at,
            auction_id,
            probe,
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Reconstruction {
    pub bids: Vec<BidEvent>,
    /// Bid numbers absent between the first and last captured bid.
    pub missing: u64,
    pub complete: bool,
}

/// Merges probes (sorted by observation time) into one bid stream. Every bid
/// takes the timestamp of the first probe that reported it.
pub fn reconstruct_bids(probes: &[(f64, &ProbeLine)]) -> Result<Reconstruction, TraceError> {
    let mut bids: Vec<BidEvent> = Vec::new();
    let mut last_time = f64::NEG_INFINITY;
    for (index, (t, probe)) in probes.iter().enumerate() {
        if *t < last_time {
            return Err(TraceError::Unsorted { probe: index });
        }
        last_time = *t;
        let mut tuples: Vec<&BidEvent> = probe.bh.iter().collect();
        tuples.sort_by_key(|e| e.bidnumber);
        let max = bids.last().map(|e| e.bidnumber);
        for e in tuples {
            match max {
                Some(m) if e.bidnumber <= m => {
                    if bids
                        .binary_search_by_key(&e.bidnumber, |b| b.bidnumber)
                        .is_err()
                    {
                        return Err(TraceError::NonMonotone {
                            probe: index,
                            bidnumber: e.bidnumber,
                            max: m,
                        });
                    }
                }
                _ => {
                    if bids.last().is_some_and(|b| b.bidnumber == e.bidnumber) {
                        continue;
                    }
                    let mut bid = e.clone();
                    bid.timestamp = Some(*t);
                    bids.push(bid);
                }
            }
        }
    }
    let missing = match (bids.first(), bids.last()) {
        (Some(a), Some(z)) => z.bidnumber - a.bidnumber + 1 - bids.len() as u64,
        _ => 0,
    };
    Ok(Reconstruction {
        bids,
        missing,
        complete: missing == 0,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuctionTrace {
    pub auction_id: Option<u64>,
    pub bids: Vec<BidEvent>,
    pub missing: u64,
    /// Whether any probe reported the ended status.
    pub ended: bool,
}

/// Groups rows by auction id (rows without an id form one auction) and
/// reconstructs each stream. Rows are stably sorted by observation time.
pub fn group_traces(rows: &[TraceRow]) -> Result<Vec<AuctionTrace>, TraceError> {
    let mut groups: BTreeMap<Option<u64>, Vec<&TraceRow>> = BTreeMap::new();
    for r in rows {
        groups.entry(r.auction_id).or_default().push(r);
    }
    let mut out = Vec::with_capacity(groups.len());
    for (auction_id, mut rs) in groups {
        rs.sort_by(|a, b| a.observed_at.total_cmp(&b.observed_at));
        let probes: Vec<(f64, &ProbeLine)> = rs.iter().map(|r| (r.observed_at, &r.probe)).collect();
        let rec = reconstruct_bids(&probes)?;
        out.push(AuctionTrace {
            auction_id,
            bids: rec.bids,
            missing: rec.missing,
            ended: rs.iter().any(|r| r.probe.ended()),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::money::Cents;
    use crate::trace::{BidType, Username};

    fn probe(numbers: impl IntoIterator<Item = u64>) -> ProbeLine {
        let bh = numbers
            .into_iter()
            .map(|n| BidEvent {
                bidnumber: n,
                username: Username::from(if n % 2 == 0 { "a" } else { "b" }),
                bidtype: BidType::Player,
                price: Cents(n as i64 * 6),
                yourbid: false,
                timestamp: None,
            })
            .collect();
        ProbeLine::new(10, 1, Username::from("a"), Cents(0), bh, [0; 4])
    }

    #[test]
    fn overlapping_probes_cover_everything() {
        let ps: Vec<ProbeLine> = (0..15)
            .map(|i| probe((i * 7 + 1..=(i * 7 + 10).min(100)).rev()))
            .collect();
        let refs: Vec<(f64, &ProbeLine)> =
            ps.iter().enumerate().map(|(i, p)| (i as f64, p)).collect();
        let r = reconstruct_bids(&refs).unwrap();
        assert_eq!(r.bids.len(), 100);
        assert_eq!(r.missing, 0);
        assert!(r.complete);
        assert!(r
            .bids
            .windows(2)
            .all(|w| w[0].bidnumber + 1 == w[1].bidnumber));
    }

    #[test]
    fn gap_is_counted() {
        let a = probe(1..=10);
        let b = probe(25..=30);
        let r = reconstruct_bids(&[(0.0, &a), (1.0, &b)]).unwrap();
        assert_eq!(r.missing, 14);
        assert!(!r.complete);
    }

    #[test]
    fn one_probe_shares_its_timestamp() {
        let a = probe(1..=10);
        let r = reconstruct_bids(&[(42.5, &a)]).unwrap();
        assert!(r.bids.iter().all(|b| b.timestamp == Some(42.5)));
    }

    #[test]
    fn late_backfill_is_rejected() {
        let a = probe(1..=5);
        let b = probe(10..=12);
        let c = probe([7]);
        let err = reconstruct_bids(&[(0.0, &a), (1.0, &b), (2.0, &c)]).unwrap_err();
        assert!(matches!(
            err,
            TraceError::NonMonotone {
                bidnumber: 7,
                max: 12,
                ..
            }
        ));
    }

    #[test]
    fn reads_rows_with_and_without_id() {
        let text = b"100.5\tct=1|cs=1|bh=1:x:1:6:0:#\n\n101\t77\tct=0|cs=20|bh=2:y:2:12:0:#\n";
        let rows = read_trace_rows(&text[..]).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].auction_id, None);
        assert_eq!(rows[1].auction_id, Some(77));
        let traces = group_traces(&rows).unwrap();
        assert_eq!(traces.len(), 2);
        assert!(traces[1].ended);
        let err = read_trace_rows(&b"abc\tct=1\n"[..]).unwrap_err();
        assert!(matches!(err, TraceError::Row { line: 1, .. }));
    }
}
