//! The per-auction outcome table.
//!
//! Seventeen delimiter-separated fields per row, in this order:
//! `auction_id product_id item desc retail price finalprice bidincrement
//! bidfee winner placedbids freebids endtime flg_click_only
//! flg_beginnerauction flg_fixedprice flg_endprice`. Dollar fields
//! (`retail`, `price`, `finalprice`) are converted to cents; `bidincrement`
//! and `bidfee` are already in cents. A header row may name the columns in
//! any order.

use std::io::Read;

use chrono::{DateTime, NaiveDateTime, Utc};
use serde::Serialize;

use super::Username;
use crate::money::Cents;

pub const FIELDS: [&str; 17] = [
    "auction_id",
    "product_id",
    "item",
    "desc",
    "retail",
    "price",
    "finalprice",
    "bidincrement",
    "bidfee",
    "winner",
    "placedbids",
    "freebids",
    "endtime",
    "flg_click_only",
    "flg_beginnerauction",
    "flg_fixedprice",
    "flg_endprice",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EndTime {
    /// Wall-clock time in the stated zone.
    pub local: NaiveDateTime,
    pub zone: String,
}

impl EndTime {
    /// Parses `13:29 PDT 12-12-2009` (month-day-year).
    pub fn parse(s: &str) -> Option<EndTime> {
        let mut parts = s.split_whitespace();
        let (time, zone, date) = (parts.next()?, parts.next()?, parts.next()?);
        if parts.next().is_some() {
            return None;
        }
        let local =
            NaiveDateTime::parse_from_str(&format!("{date} {time}"), "%m-%d-%Y %H:%M").ok()?;
        Some(EndTime {
            local,
            zone: zone.to_string(),
        })
    }

    /// Offset from UTC in seconds for the zone abbreviations seen on the
    /// site's US, UK and German pages.
    pub fn utc_offset(&self) -> Option<i64> {
        let hours = match self.zone.as_str() {
            "UTC" | "GMT" => 0,
            "BST" | "CET" => 1,
            "CEST" => 2,
            "EDT" => -4,
            "EST" | "CDT" => -5,
            "CST" | "MDT" => -6,
            "MST" | "PDT" => -7,
            "PST" => -8,
            _ => return None,
        };
        Some(hours * 3600)
    }

    pub fn utc(&self) -> Option<DateTime<Utc>> {
        let offset = self.utc_offset()?;
        Some(
            DateTime::<Utc>::from_naive_utc_and_offset(self.local, Utc)
                - chrono::Duration::seconds(offset),
        )
    }

    pub fn to_wire(&self) -> String {
        format!(
            "{} {} {}",
            self.local.format("%H:%M"),
            self.zone,
            self.local.format("%m-%d-%Y")
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuctionOutcomeRecord {
    pub auction_id: u64,
    pub product_id: u64,
    pub item: String,
    pub desc: String,
    pub retail: Cents,
    pub price: Cents,
    pub finalprice: Cents,
    pub bidincrement: Cents,
    pub bidfee: Cents,
    pub winner: Username,
    pub placedbids: u64,
    pub freebids: u64,
    pub endtime: EndTime,
    pub flg_click_only: bool,
    pub flg_beginnerauction: bool,
    pub flg_fixedprice: bool,
    pub flg_endprice: bool,
}

impl AuctionOutcomeRecord {
    /// Serialises the record in the documented column order.
    pub fn to_fields(&self) -> Vec<Vec<u8>> {
        let flag = |b: bool| if b { b"1".to_vec() } else { b"0".to_vec() };
        vec![
            self.auction_id.to_string().into_bytes(),
            self.product_id.to_string().into_bytes(),
            self.item.clone().into_bytes(),
            self.desc.clone().into_bytes(),
            dollars(self.retail).into_bytes(),
            dollars(self.price).into_bytes(),
            dollars(self.finalprice).into_bytes(),
            self.bidincrement.0.to_string().into_bytes(),
            self.bidfee.0.to_string().into_bytes(),
            self.winner.0.clone(),
            self.placedbids.to_string().into_bytes(),
            self.freebids.to_string().into_bytes(),
            self.endtime.to_wire().into_bytes(),
            flag(self.flg_click_only),
            flag(self.flg_beginnerauction),
            flag(self.flg_fixedprice),
            flag(self.flg_endprice),
        ]
    }

    pub fn is_bidpack(&self) -> bool {
        let norm = |s: &str| s.to_ascii_lowercase().replace('-', " ");
        norm(&self.item).contains("bids voucher") || norm(&self.desc).contains("bids voucher")
    }
}

/// Dollar amount without trailing zero cents, as the site prints it.
fn dollars(c: Cents) -> String {
    if c.0 % 100 == 0 {
        (c.0 / 100).to_string()
    } else {
        c.to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowDiagnostic {
    /// 1-based line number in the input.
    pub line: u64,
    pub field: Option<&'static str>,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct OutcomeParse {
    pub records: Vec<AuctionOutcomeRecord>,
    pub diagnostics: Vec<RowDiagnostic>,
}

#[derive(Debug, Clone, Copy)]
pub struct OutcomeOptions {
    pub delimiter: u8,
    pub has_header: bool,
}

impl Default for OutcomeOptions {
    fn default() -> Self {
        OutcomeOptions {
            delimiter: b'\t',
            has_header: false,
        }
    }
}

/// Parses outcome rows. Malformed rows are reported and skipped; nothing is
/// silently coerced.
pub fn parse_outcome_rows<R: Read>(source: R, options: OutcomeOptions) -> OutcomeParse {
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(options.delimiter)
        .has_headers(false)
        .quoting(false)
        .flexible(true)
        .from_reader(source);
    let mut out = OutcomeParse::default();
    let mut columns: [usize; 17] = std::array::from_fn(|i| i);
    let mut first = true;
    let mut record = csv::ByteRecord::new();
    loop {
        let line = reader.position().line();
        match reader.read_byte_record(&mut record) {
            Ok(false) => break,
            Ok(true) => {}
            Err(e) => {
                out.diagnostics.push(RowDiagnostic {
                    line,
                    field: None,
                    message: e.to_string(),
                });
                continue;
            }
        }
        if std::mem::take(&mut first) && options.has_header {
            match header_columns(&record) {
                Ok(c) => columns = c,
                Err(message) => {
                    out.diagnostics.push(RowDiagnostic {
                        line,
                        field: None,
                        message,
                    });
                    return out;
                }
            }
            continue;
        }
        if record.len() == 1 && record[0].iter().all(u8::is_ascii_whitespace) {
            continue;
        }
        match parse_row(&record, &columns) {
            Ok(r) => out.records.push(r),
            Err((field, message)) => out.diagnostics.push(RowDiagnostic {
                line,
                field,
                message,
            }),
        }
    }
    out
}

fn header_columns(record: &csv::ByteRecord) -> Result<[usize; 17], String> {
    let names: Vec<String> = record
        .iter()
        .map(|f| String::from_utf8_lossy(f).trim().to_ascii_lowercase())
        .collect();
    let mut columns = [0usize; 17];
    for (slot, want) in columns.iter_mut().zip(FIELDS) {
        *slot = names
            .iter()
            .position(|n| n == want || (want == "endtime" && n == "endtime_str"))
            .ok_or_else(|| format!("header lacks column `{want}`"))?;
    }
    Ok(columns)
}

type FieldError = (Option<&'static str>, String);

fn parse_row(
    record: &csv::ByteRecord,
    columns: &[usize; 17],
) -> Result<AuctionOutcomeRecord, FieldError> {
    let needed = columns.iter().max().copied().unwrap_or(0) + 1;
    if record.len() < needed {
        return Err((
            None,
            format!("expected {} fields, found {}", needed.max(17), record.len()),
        ));
    }
    let raw = |i: usize| &record[columns[i]];
    let text = |i: usize| -> Result<&str, FieldError> {
        std::str::from_utf8(raw(i))
            .map(str::trim)
            .map_err(|_| (Some(FIELDS[i]), "not ASCII text".to_string()))
    };
    let int = |i: usize| -> Result<u64, FieldError> {
        let t = text(i)?;
        t.parse::<u64>().map_err(|_| {
            (
                Some(FIELDS[i]),
                format!("`{t}` is not a nonnegative integer"),
            )
        })
    };
    let money = |i: usize| -> Result<Cents, FieldError> {
        let t = text(i)?;
        Cents::parse_dollars(t).map_err(|e| (Some(FIELDS[i]), e.to_string()))
    };
    let cents = |i: usize| -> Result<Cents, FieldError> {
        let t = text(i)?;
        Cents::parse_cents(t).map_err(|_| {
            (
                Some(FIELDS[i]),
                format!("`{t}` is not a whole number of cents"),
            )
        })
    };
    let flag = |i: usize| -> Result<bool, FieldError> {
        match text(i)? {
            "0" => Ok(false),
            "1" => Ok(true),
            t => Err((Some(FIELDS[i]), format!("flag `{t}` is neither 0 nor 1"))),
        }
    };
    let endtime = {
        let t = text(12)?;
        EndTime::parse(t).ok_or_else(|| {
            (
                Some(FIELDS[12]),
                format!("`{t}` is not `HH:MM ZONE MM-DD-YYYY`"),
            )
        })?
    };
    let rec = AuctionOutcomeRecord {
        auction_id: int(0)?,
        product_id: int(1)?,
        item: String::from_utf8_lossy(raw(2)).into_owned(),
        desc: String::from_utf8_lossy(raw(3)).into_owned(),
        retail: money(4)?,
        price: money(5)?,
        finalprice: money(6)?,
        bidincrement: cents(7)?,
        bidfee: cents(8)?,
        winner: Username(raw(9).to_vec()),
        placedbids: int(10)?,
        freebids: int(11)?,
        endtime,
        flg_click_only: flag(13)?,
        flg_beginnerauction: flag(14)?,
        flg_fixedprice: flag(15)?,
        flg_endprice: flag(16)?,
    };
    for (c, name) in [
        (rec.retail, "retail"),
        (rec.price, "price"),
        (rec.finalprice, "finalprice"),
    ] {
        if c.0 < 0 {
            return Err((Some(name), "negative amount".to_string()));
        }
    }
    if rec.bidincrement.0 < 0 || rec.bidfee.0 < 0 {
        return Err((Some("bidincrement"), "negative cents".to_string()));
    }
    if rec.bidincrement.0 == 0 && !rec.flg_fixedprice {
        return Err((
            Some("bidincrement"),
            "zero increment on an ascending auction".to_string(),
        ));
    }
    Ok(rec)
}

/// Writes records as tab-separated rows, optionally with a header.
pub fn write_outcome_rows(records: &[AuctionOutcomeRecord], header: bool) -> Vec<u8> {
    let mut out = Vec::new();
    if header {
        out.extend_from_slice(FIELDS.join("\t").as_bytes());
        out.push(b'\n');
    }
    for r in records {
        out.extend_from_slice(&r.to_fields().join(&b'\t'));
        out.push(b'\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const EXAMPLE: &str = "259070\t10011706\t300-bids-voucher\t300 Bids Voucher\t180\t31.26\t31.26\t6\t60\tSchonmir1500\t106\t0\t13:29 PDT 12-12-2009\t1\t0\t0\t0\n";

    #[test]
    fn example_row() {
        let p = parse_outcome_rows(EXAMPLE.as_bytes(), OutcomeOptions::default());
        assert!(p.diagnostics.is_empty(), "{:?}", p.diagnostics);
        let r = &p.records[0];
        assert_eq!(r.auction_id, 259070);
        assert_eq!(r.product_id, 10011706);
        assert_eq!(r.item, "300-bids-voucher");
        assert_eq!(r.desc, "300 Bids Voucher");
        assert_eq!(r.retail, Cents(18000));
        assert_eq!(r.price, Cents(3126));
        assert_eq!(r.finalprice, Cents(3126));
        assert_eq!(r.bidincrement, Cents(6));
        assert_eq!(r.bidfee, Cents(60));
        assert_eq!(r.winner, Username::from("Schonmir1500"));
        assert_eq!(r.placedbids, 106);
        assert_eq!(r.freebids, 0);
        assert_eq!(r.endtime.to_wire(), "13:29 PDT 12-12-2009");
        assert_eq!(
            r.endtime.utc().unwrap().to_rfc3339(),
            "2009-12-12T20:29:00+00:00"
        );
        assert!(r.flg_click_only && !r.flg_beginnerauction && !r.flg_fixedprice && !r.flg_endprice);
        assert!(r.is_bidpack());
        assert_eq!(write_outcome_rows(&p.records, false), EXAMPLE.as_bytes());
    }

    #[test]
    fn empty_input() {
        let p = parse_outcome_rows(&b""[..], OutcomeOptions::default());
        assert!(p.records.is_empty() && p.diagnostics.is_empty());
    }

    #[test]
    fn bad_retail_is_skipped() {
        let bad = EXAMPLE.replacen("\t180\t", "\tabc\t", 1);
        let input = format!("{bad}{EXAMPLE}");
        let p = parse_outcome_rows(input.as_bytes(), OutcomeOptions::default());
        assert_eq!(p.records.len(), 1);
        assert_eq!(p.diagnostics.len(), 1);
        assert_eq!(p.diagnostics[0].line, 1);
        assert_eq!(p.diagnostics[0].field, Some("retail"));
    }

    #[test]
    fn header_in_any_order() {
        let mut names = FIELDS.to_vec();
        names.swap(0, 1);
        let mut cells: Vec<&str> = EXAMPLE.trim_end().split('\t').collect();
        cells.swap(0, 1);
        let input = format!("{}\n{}\n", names.join(","), cells.join(","));
        let p = parse_outcome_rows(
            input.as_bytes(),
            OutcomeOptions {
                delimiter: b',',
                has_header: true,
            },
        );
        assert_eq!(p.records[0].auction_id, 259070);
    }

    #[test]
    fn short_row() {
        let p = parse_outcome_rows(&b"1\t2\t3\n"[..], OutcomeOptions::default());
        assert_eq!(p.records.len(), 0);
        assert_eq!(p.diagnostics.len(), 1);
    }
}
