//! Probe lines returned by the live auction page, e.g.
//!
//! `ct=15|cs=1|ra=0|cw=Schonmir1500|cp=3126|bh=521:Schonmir1500:1:3126:0:#|lui=4#1#0#0`
//!
//! Fields are `|`-separated `key=value` pairs. `bh` holds up to ten
//! `#`-terminated tuples `bidnumber:username:bidtype:price:yourbid`. The
//! parser records field order, unknown fields and separator style so that a
//! well-formed line serialises back to the same bytes.

use serde::Serialize;
use thiserror::Error;

use super::Username;
use crate::money::Cents;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BidType {
    Player,
    BidButler,
}

impl BidType {
    fn code(self) -> u8 {
        match self {
            BidType::Player => 1,
            BidType::BidButler => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BidEvent {
    pub bidnumber: u64,
    pub username: Username,
    pub bidtype: BidType,
    /// Price after the bid.
    pub price: Cents,
    pub yourbid: bool,
    /// Collector time (unix seconds) of the probe that first reported the
    /// bid; shared by every bid of that probe.
    pub timestamp: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProbeError {
    #[error("empty probe line")]
    Empty,
    #[error("segment {index} lacks `=`")]
    MissingEquals { index: usize },
    #[error("field `{key}` has malformed value `{value}`")]
    BadField { key: &'static str, value: String },
    #[error("bid tuple {index} is malformed: {reason}")]
    BadTuple { index: usize, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    Ct,
    Cs,
    Ra,
    Cw,
    Cp,
    Bh,
    Lui,
    Extra(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
struct BhStyle {
    trailing_colon: bool,
    trailing_hash: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ProbeLine {
    /// Seconds left on the countdown clock.
    pub ct: Option<u32>,
    /// Status code: 1 while active, 20 once ended.
    pub cs: Option<u32>,
    pub ra: Option<bool>,
    pub cw: Option<Username>,
    pub cp: Option<Cents>,
    pub bh: Vec<BidEvent>,
    /// Seconds added by player bids, player bids, seconds added by BidButler
    /// bids, BidButler bids.
    pub lui: Option<[u32; 4]>,
    pub extras: Vec<(Vec<u8>, Vec<u8>)>,
    layout: Vec<Slot>,
    bh_style: BhStyle,
}

pub const STATUS_ACTIVE: u32 = 1;
pub const STATUS_ENDED: u32 = 20;

impl ProbeLine {
    pub fn ended(&self) -> bool {
        self.cs == Some(STATUS_ENDED)
    }

    /// Re-emits the line in its original layout.
    pub fn serialize(&self) -> Vec<u8> {
        let mut out = Vec::new();
        for (i, slot) in self.layout.iter().enumerate() {
            if i > 0 {
                out.push(b'|');
            }
            match *slot {
                Slot::Ct => push_kv(&mut out, b"ct", opt_num(self.ct)),
                Slot::Cs => push_kv(&mut out, b"cs", opt_num(self.cs)),
                Slot::Ra => push_kv(
                    &mut out,
                    b"ra",
                    self.ra.map_or(Vec::new(), |r| vec![b'0' + r as u8]),
                ),
                Slot::Cw => push_kv(
                    &mut out,
                    b"cw",
                    self.cw.as_ref().map_or(Vec::new(), |u| u.0.clone()),
                ),
                Slot::Cp => push_kv(&mut out, b"cp", opt_num(self.cp.map(|c| c.0))),
                Slot::Bh => push_kv(&mut out, b"bh", self.serialize_bh()),
                Slot::Lui => {
                    let v = self.lui.map_or(String::new(), |l| {
                        l.iter().map(u32::to_string).collect::<Vec<_>>().join("#")
                    });
                    push_kv(&mut out, b"lui", v.into_bytes())
                }
                Slot::Extra(j) => {
                    let (k, v) = &self.extras[j];
                    push_kv(&mut out, k, v.clone())
                }
            }
        }
        out
    }

    fn serialize_bh(&self) -> Vec<u8> {
        let mut out = Vec::new();
        for (i, e) in self.bh.iter().enumerate() {
            if i > 0 {
                out.push(b'#');
            }
            out.extend_from_slice(e.bidnumber.to_string().as_bytes());
            out.push(b':');
            out.extend_from_slice(&e.username.0);
            out.extend_from_slice(
                format!(
                    ":{}:{}:{}",
                    e.bidtype.code(),
                    e.price.0,
                    u8::from(e.yourbid)
                )
                .as_bytes(),
            );
            if self.bh_style.trailing_colon {
                out.push(b':');
            }
        }
        if self.bh_style.trailing_hash && !self.bh.is_empty() {
            out.push(b'#');
        }
        out
    }

    /// A line carrying the given fields in the canonical order.
    pub fn new(
        ct: u32,
        cs: u32,
        cw: Username,
        cp: Cents,
        bh: Vec<BidEvent>,
        lui: [u32; 4],
    ) -> Self {
        ProbeLine {
            ct: Some(ct),
            cs: Some(cs),
            ra: Some(false),
            cw: Some(cw),
            cp: Some(cp),
            bh,
            lui: Some(lui),
            extras: Vec::new(),
            layout: vec![
                Slot::Ct,
                Slot::Cs,
                Slot::Ra,
                Slot::Cw,
                Slot::Cp,
                Slot::Bh,
                Slot::Lui,
            ],
            bh_style: BhStyle {
                trailing_colon: true,
                trailing_hash: true,
            },
        }
    }
}

fn opt_num<T: ToString>(v: Option<T>) -> Vec<u8> {
    v.map_or(Vec::new(), |n| n.to_string().into_bytes())
}

fn push_kv(out: &mut Vec<u8>, key: &[u8], value: Vec<u8>) {
    out.extend_from_slice(key);
    out.push(b'=');
    out.extend_from_slice(&value);
}

fn num<T: std::str::FromStr>(key: &'static str, v: &[u8]) -> Result<T, ProbeError> {
    std::str::from_utf8(v)
        .ok()
        .filter(|s| !s.starts_with('+') && (s.len() == 1 || !s.starts_with('0')))
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| ProbeError::BadField {
            key,
            value: String::from_utf8_lossy(v).into_owned(),
        })
}

pub fn parse_probe_line(line: &[u8]) -> Result<ProbeLine, ProbeError> {
    let line = line.strip_suffix(b"\n").unwrap_or(line);
    let line = line.strip_suffix(b"\r").unwrap_or(line);
    if line.is_empty() {
        return Err(ProbeError::Empty);
    }
    let mut p = ProbeLine::default();
    for (index, segment) in line.split(|&c| c == b'|').enumerate() {
        let eq = segment
            .iter()
            .position(|&c| c == b'=')
            .ok_or(ProbeError::MissingEquals { index })?;
        let (key, value) = (&segment[..eq], &segment[eq + 1..]);
        let seen = |s: Slot| p.layout.contains(&s);
        let slot = match key {
            b"ct" if !seen(Slot::Ct) => {
                p.ct = Some(num("ct", value)?);
                Slot::Ct
            }
            b"cs" if !seen(Slot::Cs) => {
                p.cs = Some(num("cs", value)?);
                Slot::Cs
            }
            b"ra" if !seen(Slot::Ra) => {
                p.ra = Some(match value {
                    b"0" => false,
                    b"1" => true,
                    _ => {
                        return Err(ProbeError::BadField {
                            key: "ra",
                            value: String::from_utf8_lossy(value).into_owned(),
                        })
                    }
                });
                Slot::Ra
            }
            b"cw" if !seen(Slot::Cw) => {
                p.cw = Some(Username(value.to_vec()));
                Slot::Cw
            }
            b"cp" if !seen(Slot::Cp) => {
                p.cp = Some(Cents(num("cp", value)?));
                Slot::Cp
            }
            b"bh" if !seen(Slot::Bh) => {
                let (bids, style) = parse_bh(value)?;
                p.bh = bids;
                p.bh_style = style;
                Slot::Bh
            }
            b"lui" if !seen(Slot::Lui) => {
                let parts: Vec<&[u8]> = value.split(|&c| c == b'#').collect();
                if parts.len() != 4 {
                    return Err(ProbeError::BadField {
                        key: "lui",
                        value: String::from_utf8_lossy(value).into_owned(),
                    });
                }
                let mut lui = [0u32; 4];
                for (slot, part) in lui.iter_mut().zip(parts) {
                    *slot = num("lui", part)?;
                }
                p.lui = Some(lui);
                Slot::Lui
            }
            _ => {
                p.extras.push((key.to_vec(), value.to_vec()));
                Slot::Extra(p.extras.len() - 1)
            }
        };
        p.layout.push(slot);
    }
    Ok(p)
}

fn parse_bh(value: &[u8]) -> Result<(Vec<BidEvent>, BhStyle), ProbeError> {
    let mut style = BhStyle::default();
    if value.is_empty() {
        return Ok((Vec::new(), style));
    }
    let body = match value.strip_suffix(b"#") {
        Some(b) => {
            style.trailing_hash = true;
            b
        }
        None => value,
    };
    let mut bids = Vec::new();
    for (index, piece) in body.split(|&c| c == b'#').enumerate() {
        let bad = |reason: &str| ProbeError::BadTuple {
            index,
            reason: reason.to_string(),
        };
        let piece = match piece.strip_suffix(b":") {
            Some(p) => {
                if index == 0 {
                    style.trailing_colon = true;
                } else if !style.trailing_colon {
                    return Err(bad("inconsistent trailing `:`"));
                }
                p
            }
            None if style.trailing_colon => return Err(bad("inconsistent trailing `:`")),
            None => piece,
        };
        let first = piece
            .iter()
            .position(|&c| c == b':')
            .ok_or_else(|| bad("missing fields"))?;
        let bidnumber = num::<u64>("bh", &piece[..first]).map_err(|_| bad("bad bid number"))?;
        let rest = &piece[first + 1..];
        let mut back = rest.rsplitn(4, |&c| c == b':');
        let yourbid = back.next().ok_or_else(|| bad("missing yourbid"))?;
        let price = back.next().ok_or_else(|| bad("missing price"))?;
        let bidtype = back.next().ok_or_else(|| bad("missing bidtype"))?;
        let username = back.next().ok_or_else(|| bad("missing username"))?;
        let bidtype = match bidtype {
            b"1" => BidType::Player,
            b"2" => BidType::BidButler,
            _ => return Err(bad("bidtype must be 1 or 2")),
        };
        let yourbid = match yourbid {
            b"0" => false,
            b"1" => true,
            _ => return Err(bad("yourbid must be 0 or 1")),
        };
        let price = Cents(num::<i64>("bh", price).map_err(|_| bad("bad price"))?);
        bids.push(BidEvent {
            bidnumber,
            username: Username(username.to_vec()),
            bidtype,
            price,
            yourbid,
            timestamp: None,
        });
    }
    Ok((bids, style))
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &[u8] =
        b"ct=15|cs=1|ra=0|cw=Schonmir1500|cp=3126|bh=521:Schonmir1500:1:3126:0:#|lui=4#1#0#0";

    #[test]
    fn decodes_example() {
        let p = parse_probe_line(EXAMPLE).unwrap();
        assert_eq!(p.ct, Some(15));
        assert_eq!(p.cs, Some(STATUS_ACTIVE));
        assert_eq!(p.ra, Some(false));
        assert_eq!(p.cw, Some(Username::from("Schonmir1500")));
        assert_eq!(p.cp, Some(Cents(3126)));
        assert_eq!(p.lui, Some([4, 1, 0, 0]));
        assert_eq!(p.bh.len(), 1);
        let bid = &p.bh[0];
        assert_eq!(bid.bidnumber, 521);
        assert_eq!(bid.username, Username::from("Schonmir1500"));
        assert_eq!(bid.bidtype, BidType::Player);
        assert_eq!(bid.price, Cents(3126));
        assert!(!bid.yourbid);
        assert_eq!(p.serialize(), EXAMPLE);
    }

    #[test]
    fn empty_history_and_end_state() {
        let p = parse_probe_line(b"ct=0|cs=20|bh=").unwrap();
        assert!(p.bh.is_empty());
        assert!(p.ended());
        assert_eq!(p.serialize(), b"ct=0|cs=20|bh=");
    }

    #[test]
    fn unknown_keys_survive() {
        let line = b"zz=abc|ct=3|bh=2:a:b:2:10:1:#1:x:1:4:0:#|q=";
        let p = parse_probe_line(line).unwrap();
        assert_eq!(p.extras.len(), 2);
        assert_eq!(p.bh[0].username, Username::from("a:b"));
        assert_eq!(p.bh[0].bidtype, BidType::BidButler);
        assert!(p.bh[0].yourbid);
        assert_eq!(p.serialize(), line);
    }

    #[test]
    fn bad_tuple_is_named() {
        let err = parse_probe_line(b"bh=1:a:1:5:0:#2:b:9:6:0:#").unwrap_err();
        assert_eq!(
            err,
            ProbeError::BadTuple {
                index: 1,
                reason: "bidtype must be 1 or 2".into()
            }
        );
        assert!(matches!(
            parse_probe_line(b"ct"),
            Err(ProbeError::MissingEquals { index: 0 })
        ));
        assert!(matches!(
            parse_probe_line(b"ct=x"),
            Err(ProbeError::BadField { key: "ct", .. })
        ));
    }
}
