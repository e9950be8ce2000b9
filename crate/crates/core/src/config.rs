//! Flat key-value scenario configuration.
//!
//! Every field has a default, so an empty document describes the default
//! auction for the chosen scenario: `n = 50`, `v = 100`, `b = 1`, `p = 0`,
//! and `s = 0.25` when the scenario is run as an ascending-price auction.
//! Dollar amounts are given as decimals and rounded to cents.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::markov::TieRule;
use crate::model::AuctionSpec;
use crate::money::Cents;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scenario {
    Underestimate,
    Mixed,
    Uncertain,
    Bidfee,
    Valuation,
    Collusion,
    Shill,
    Committed,
}

impl Scenario {
    pub const ALL: [Scenario; 8] = [
        Scenario::Underestimate,
        Scenario::Mixed,
        Scenario::Uncertain,
        Scenario::Bidfee,
        Scenario::Valuation,
        Scenario::Collusion,
        Scenario::Shill,
        Scenario::Committed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::Underestimate => "underestimate",
            Scenario::Mixed => "mixed",
            Scenario::Uncertain => "uncertain",
            Scenario::Bidfee => "bidfee",
            Scenario::Valuation => "valuation",
            Scenario::Collusion => "collusion",
            Scenario::Shill => "shill",
            Scenario::Committed => "committed",
        }
    }

    pub fn default_auction(self) -> AuctionType {
        match self {
            Scenario::Shill | Scenario::Committed => AuctionType::Ascending,
            _ => AuctionType::Fixed,
        }
    }

    fn default_k(self) -> i64 {
        match self {
            Scenario::Underestimate | Scenario::Mixed => 1,
            Scenario::Bidfee | Scenario::Valuation => 10,
            Scenario::Collusion => 2,
            _ => 0,
        }
    }

    fn default_alpha(self) -> f64 {
        match self {
            Scenario::Committed => 1.5,
            _ => 2.0,
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = crate::ModelError;

    fn from_str(s: &str) -> Result<Self> {
        Scenario::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Scenario::ALL.iter().map(|c| c.name()).collect();
                invalid(
                    "scenario",
                    format!(
                        "unknown scenario `{s}`; expected one of {}",
                        names.join(", ")
                    ),
                )
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AuctionType {
    Fixed,
    Ascending,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TieChoice {
    /// Each coalition member holds its own lottery ticket.
    Many,
    /// The coalition bids through a single identity.
    Single,
}

impl From<TieChoice> for TieRule {
    fn from(t: TieChoice) -> TieRule {
        match t {
            TieChoice::Many => TieRule::UniformOverBidders,
            TieChoice::Single => TieRule::SingleIdentityA,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub auction: Option<AuctionType>,
    pub n: u32,
    pub v: f64,
    pub b: f64,
    pub p: f64,
    pub s: f64,
    /// Group size or misestimate; meaning depends on the scenario.
    pub k: Option<i64>,
    pub alpha: Option<f64>,
    pub b_a: f64,
    pub b_b: Option<f64>,
    pub rho: f64,
    pub l: u64,
    pub identities: u8,
    pub tie_rule: TieChoice,
    /// Half-width of the uniform population belief.
    pub spread: u32,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            scenario: Scenario::Underestimate,
            auction: None,
            n: 50,
            v: 100.0,
            b: 1.0,
            p: 0.0,
            s: 0.25,
            k: None,
            alpha: None,
            b_a: 0.5,
            b_b: None,
            rho: 1.0,
            l: 30,
            identities: 1,
            tie_rule: TieChoice::Many,
            spread: 5,
        }
    }
}

/// Names accepted by [`ScenarioConfig::set`].
pub const NUMERIC_KEYS: [&str; 13] = [
    "n",
    "v",
    "b",
    "p",
    "s",
    "k",
    "alpha",
    "b_a",
    "b_b",
    "rho",
    "l",
    "identities",
    "spread",
];

fn integral(key: &str, value: f64) -> Result<i64> {
    if value.fract() != 0.0 || !value.is_finite() {
        return Err(invalid(
            "param",
            format!("`{key}` takes integer values, got {value}"),
        ));
    }
    Ok(value as i64)
}

fn non_negative<T: TryFrom<i64>>(key: &str, value: f64) -> Result<T> {
    let i = integral(key, value)?;
    T::try_from(i).map_err(|_| invalid("param", format!("`{key}` out of range: {value}")))
}

impl ScenarioConfig {
    pub fn for_scenario(scenario: Scenario) -> Self {
        ScenarioConfig {
            scenario,
            ..Default::default()
        }
    }

    pub fn from_toml(text: &str) -> std::result::Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serialises")
    }

    pub fn auction_type(&self) -> AuctionType {
        self.auction.unwrap_or(self.scenario.default_auction())
    }

    pub fn k(&self) -> i64 {
        self.k.unwrap_or(self.scenario.default_k())
    }

    pub fn alpha(&self) -> f64 {
        self.alpha.unwrap_or(self.scenario.default_alpha())
    }

    pub fn b_b(&self) -> f64 {
        self.b_b.unwrap_or(self.b)
    }

    pub fn spec(&self) -> Result<AuctionSpec> {
        let value = Cents::from_dollars_f64(self.v);
        let fee = Cents::from_dollars_f64(self.b);
        let spec = match self.auction_type() {
            AuctionType::Fixed => {
                AuctionSpec::fixed(value, fee, Cents::from_dollars_f64(self.p), self.n)
            }
            AuctionType::Ascending => {
                AuctionSpec::ascending(value, fee, Cents::from_dollars_f64(self.s), self.n)
            }
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Sets a numeric parameter by name.
    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        match key {
            "n" => self.n = non_negative(key, value)?,
            "v" => self.v = value,
            "b" => self.b = value,
            "p" => self.p = value,
            "s" => self.s = value,
            "k" => self.k = Some(integral(key, value)?),
            "alpha" => self.alpha = Some(value),
            "b_a" => self.b_a = value,
            "b_b" => self.b_b = Some(value),
            "rho" => self.rho = value,
            "l" => self.l = non_negative(key, value)?,
            "identities" => self.identities = non_negative(key, value)?,
            "spread" => self.spread = non_negative(key, value)?,
            _ => {
                return Err(invalid(
                    "param",
                    format!(
                        "unknown parameter `{key}`; expected one of {}",
                        NUMERIC_KEYS.join(", ")
                    ),
                ))
            }
        }
        Ok(())
    }

    /// Applies a `key=value` override; besides numeric keys this accepts
    /// `scenario`, `auction` and `tie_rule`.
    pub fn apply(&mut self, assignment: &str) -> Result<()> {
        let (key, value) = assignment
            .split_once('=')
            .ok_or_else(|| invalid("set", format!("expected key=value, got `{assignment}`")))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "scenario" => self.scenario = value.parse()?,
            "auction" => {
                self.auction = Some(match value {
                    "fixed" => AuctionType::Fixed,
                    "ascending" => AuctionType::Ascending,
                    _ => return Err(invalid("auction", "expected fixed or ascending")),
                })
            }
            "tie_rule" => {
                self.tie_rule = match value {
                    "many" => TieChoice::Many,
                    "single" => TieChoice::Single,
                    _ => return Err(invalid("tie_rule", "expected many or single")),
                }
            }
            _ => {
                let v: f64 = value
                    .parse()
                    .map_err(|_| invalid("set", format!("`{value}` is not a number")))?;
                self.set(key, v)?
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_is_the_default_auction() {
        let c = ScenarioConfig::from_toml("").unwrap();
        assert_eq!(c.spec().unwrap(), AuctionSpec::fixed_defaults());
        let shill = ScenarioConfig::from_toml("scenario = \"shill\"").unwrap();
        assert_eq!(shill.spec().unwrap(), AuctionSpec::ascending_defaults());
    }

    #[test]
    fn round_trips_through_toml() {
        let mut c = ScenarioConfig::for_scenario(Scenario::Collusion);
        c.apply("k=5").unwrap();
        c.apply("tie_rule=single").unwrap();
        let back = ScenarioConfig::from_toml(&c.to_toml()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(ScenarioConfig::from_toml("bogus = 1").is_err());
        assert!("auction".parse::<Scenario>().is_err());
        let mut c = ScenarioConfig::default();
        assert!(c.set("k", 1.5).is_err());
        assert!(c.set("n", -3.0).is_err());
        assert!(c.set("zeta", 1.0).is_err());
        assert!(c.apply("k").is_err());
    }
}
