//! Analysis toolkit for pay-per-bid ("penny") auctions.
//!
//! The crate is organised around a handful of layers:
//!
//! * [`model`] holds the symmetric equilibrium: bid probabilities that leave
//!   every bidder indifferent, and the revenue that follows from them.
//! * [`markov`] is the two-group absorbing chain used for every asymmetric
//!   setting, with closed-form absorption quantities for time-homogeneous
//!   chains and forward recurrences for time-inhomogeneous ones.
//! * [`scenarios`] turns each information asymmetry (misestimated
//!   populations, cheap bids, differing valuations, coalitions, shills,
//!   committed buyers) into bid-probability functions and closed forms.
//! * [`sim`] is a bid-by-bid Monte Carlo engine used as an independent
//!   oracle for the analytic results.
//! * [`trace`] parses auction outcome tables and live probe traces and
//!   computes the empirical metrics (profit margins, active bidders,
//!   aggression, duels, bidpack costs).
//! * [`sweep`] and [`report`] drive parameter sweeps and trace reports and
//!   serialise them as CSV or JSON; the `paybid` binary is a thin wrapper.
//!
//! ```
//! use paybid::model::{AuctionSpec, symmetric_expected_revenue};
//!
//! let spec = AuctionSpec::fixed_defaults();
//! assert_eq!(symmetric_expected_revenue(&spec, true).unwrap(), 100.0);
//! ```

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod markov;
pub mod model;
pub mod money;
pub mod numeric;
pub mod report;
pub mod scenarios;
pub mod sim;
pub mod sweep;
pub mod trace;

pub use error::{ModelError, Result};
pub use money::Cents;

/// Version string embedded in every generated table.
pub const TOOL_VERSION: &str = concat!("paybid ", env!("CARGO_PKG_VERSION"));
