//! Exact currency amounts.
//!
//! Amounts cross every interface (config files, parsers, reports) as whole
//! cents and are converted to `f64` dollars only inside numeric code.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Cents(pub i64);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("`{input}` is not a dollar amount with at most two decimals")]
pub struct ParseMoneyError {
    pub input: String,
}

impl Cents {
    pub const ZERO: Cents = Cents(0);

    pub const fn new(cents: i64) -> Self {
        Cents(cents)
    }

    pub const fn from_dollars(dollars: i64) -> Self {
        Cents(dollars * 100)
    }

    /// Rounds a floating dollar amount to the nearest cent.
    pub fn from_dollars_f64(dollars: f64) -> Self {
        Cents((dollars * 100.0).round() as i64)
    }

    pub fn as_dollars(self) -> f64 {
        self.0 as f64 / 100.0
    }

    pub const fn get(self) -> i64 {
        self.0
    }

    /// Parses a dollar string such as `180`, `31.26`, `$0.6` or `-2.5`.
    pub fn parse_dollars(input: &str) -> Result<Self, ParseMoneyError> {
        let err = || ParseMoneyError {
            input: input.to_string(),
        };
        let s = input.trim();
        let (negative, s) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let s = s.strip_prefix('$').unwrap_or(s);
        let (whole, frac) = match s.split_once('.') {
            Some((w, f)) => (w, f),
            None => (s, ""),
        };
        if whole.is_empty() && frac.is_empty() {
            return Err(err());
        }
        if !whole.bytes().all(|c| c.is_ascii_digit()) || !frac.bytes().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        if frac.len() > 2 {
            // Trailing zeros beyond the cent are harmless ("1.500").
            if frac[2..].bytes().any(|c| c != b'0') {
                return Err(err());
            }
        }
        let whole: i64 = if whole.is_empty() {
            0
        } else {
            whole.parse().map_err(|_| err())?
        };
        let mut cents = 0i64;
        for (i, c) in frac.bytes().take(2).enumerate() {
            cents += i64::from(c - b'0') * if i == 0 { 10 } else { 1 };
        }
        let total = whole
            .checked_mul(100)
            .and_then(|w| w.checked_add(cents))
            .ok_or_else(err)?;
        Ok(Cents(if negative { -total } else { total }))
    }

    /// Parses an integer number of cents (`6`, `60`).
    pub fn parse_cents(input: &str) -> Result<Self, ParseMoneyError> {
        input
            .trim()
            .parse::<i64>()
            .map(Cents)
            .map_err(|_| ParseMoneyError {
                input: input.to_string(),
            })
    }
}

impl fmt::Display for Cents {
    /// Formats as dollars with two decimals, e.g. `31.26`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.0 < 0 { "-" } else { "" };
        let abs = self.0.unsigned_abs();
        write!(f, "{sign}{}.{:02}", abs / 100, abs % 100)
    }
}

impl FromStr for Cents {
    type Err = ParseMoneyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Cents::parse_dollars(s)
    }
}

impl Add for Cents {
    type Output = Cents;
    fn add(self, rhs: Cents) -> Cents {
        Cents(self.0 + rhs.0)
    }
}

impl AddAssign for Cents {
    fn add_assign(&mut self, rhs: Cents) {
        self.0 += rhs.0;
    }
}

impl Sub for Cents {
    type Output = Cents;
    fn sub(self, rhs: Cents) -> Cents {
        Cents(self.0 - rhs.0)
    }
}

impl SubAssign for Cents {
    fn sub_assign(&mut self, rhs: Cents) {
        self.0 -= rhs.0;
    }
}

impl Neg for Cents {
    type Output = Cents;
    fn neg(self) -> Cents {
        Cents(-self.0)
    }
}

impl Mul<i64> for Cents {
    type Output = Cents;
    fn mul(self, rhs: i64) -> Cents {
        Cents(self.0 * rhs)
    }
}

impl std::iter::Sum for Cents {
    fn sum<I: Iterator<Item = Cents>>(iter: I) -> Cents {
        Cents(iter.map(|c| c.0).sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_outcome_style_amounts() {
        assert_eq!(Cents::parse_dollars("180").unwrap(), Cents(18000));
        assert_eq!(Cents::parse_dollars("31.26").unwrap(), Cents(3126));
        assert_eq!(Cents::parse_dollars("0.6").unwrap(), Cents(60));
        assert_eq!(Cents::parse_dollars("$1.50").unwrap(), Cents(150));
        assert_eq!(Cents::parse_dollars("-2.5").unwrap(), Cents(-250));
        assert_eq!(Cents::parse_dollars(".25").unwrap(), Cents(25));
        assert_eq!(Cents::parse_dollars("1.500").unwrap(), Cents(150));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "abc", "1.234", "1,5", "$", "1e3", "."] {
            assert!(Cents::parse_dollars(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn display_round_trips() {
        for c in [0, 5, 60, 3126, 18000, -250] {
            let s = Cents(c).to_string();
            assert_eq!(Cents::parse_dollars(&s).unwrap(), Cents(c));
        }
        assert_eq!(Cents(3126).to_string(), "31.26");
    }
}
