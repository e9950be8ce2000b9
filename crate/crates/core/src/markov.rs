//! Two-group absorbing chain.
//!
//! Transient states `A` and `B` record which group holds the lead; `W_A` and
//! `W_B` are reached when a round passes without a bid. Each round every
//! eligible non-leader flips a coin with its group's bid probability and the
//! new leader is drawn uniformly among those who bid.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{ModelError, Result};
use crate::money::Cents;
use crate::numeric::binomial_pmf;

/// Row sums and occupancy sums are checked against this tolerance.
pub const ROW_TOLERANCE: f64 = 1e-12;
/// Fixed-price evolution stops once the transient mass drops below this.
pub const TRUNCATION_MASS: f64 = 1e-12;
/// Hard cap on recurrence steps for unbounded chains.
pub const MAX_STEPS: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Group {
    A,
    B,
}

impl Group {
    pub fn other(self) -> Group {
        match self {
            Group::A => Group::B,
            Group::B => Group::A,
        }
    }
}

/// Per-player bid probability for bid number `q` given the current leader
/// (`None` for the opening bid).
pub type BetaFn = Arc<dyn Fn(u64, Option<Group>) -> f64 + Send + Sync>;

pub fn constant_beta(first: f64, later: f64) -> BetaFn {
    Arc::new(move |q, _| if q == 1 { first } else { later })
}

#[derive(Clone)]
pub struct GroupSide {
    pub size: u32,
    pub beta: BetaFn,
    pub fee: Cents,
    /// Whether a win by this group pays the final price to the auctioneer.
    pub pays_price: bool,
    /// A leader from this group may bid again (a second identity).
    pub rebids_when_leading: bool,
}

impl GroupSide {
    pub fn new(size: u32, beta: BetaFn, fee: Cents) -> Self {
        GroupSide {
            size,
            beta,
            fee,
            pays_price: true,
            rebids_when_leading: false,
        }
    }

    fn eligible(&self, me: Group, leader: Option<Group>) -> u32 {
        if leader == Some(me) && !self.rebids_when_leading {
            self.size.saturating_sub(1)
        } else {
            self.size
        }
    }
}

impl fmt::Debug for GroupSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupSide")
            .field("size", &self.size)
            .field("fee", &self.fee)
            .field("pays_price", &self.pays_price)
            .field("rebids_when_leading", &self.rebids_when_leading)
            .finish_non_exhaustive()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Pricing {
    Ascending { increment: Cents },
    Fixed { price: Cents },
}

impl Pricing {
    /// Final price after `bids` bids.
    pub fn price_after(&self, bids: u64) -> f64 {
        match *self {
            Pricing::Ascending { increment } => increment.as_dollars() * bids as f64,
            Pricing::Fixed { price } => price.as_dollars(),
        }
    }
}

impl From<crate::model::AuctionKind> for Pricing {
    fn from(kind: crate::model::AuctionKind) -> Self {
        match kind {
            crate::model::AuctionKind::Ascending { increment } => Pricing::Ascending { increment },
            crate::model::AuctionKind::FixedPrice { price } => Pricing::Fixed { price },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Horizon {
    /// No bid beyond this number is ever placed.
    Bounded(u64),
    Unbounded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TieRule {
    /// Every bidder holds one lottery ticket.
    UniformOverBidders,
    /// Group A coordinates: it holds a single ticket whenever any member
    /// wants to bid.
    SingleIdentityA,
}

/// `(P_A, P_B, P_none)` over the outcome of the opening round.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InitialDistribution {
    pub to_a: f64,
    pub to_b: f64,
    pub none: f64,
}

impl InitialDistribution {
    pub fn success(&self) -> f64 {
        self.to_a + self.to_b
    }

    /// Distribution of the first leader given at least one bid.
    pub fn conditioned(&self) -> Result<[f64; 2]> {
        let s = self.success();
        if s <= 0.0 {
            return Err(ModelError::NeverSuccessful);
        }
        Ok([self.to_a / s, self.to_b / s])
    }
}

#[derive(Debug, Clone)]
pub struct TwoGroupChain {
    pub a: GroupSide,
    pub b: GroupSide,
    pub tie_rule: TieRule,
    pub pricing: Pricing,
    pub horizon: Horizon,
    /// Transitions out of the transient states do not depend on `q >= 2`.
    pub time_homogeneous: bool,
    /// Overrides the opening round computed from `beta(1, None)`.
    pub initial: Option<InitialDistribution>,
    /// Notes from the scenario builder, such as clamped corner equilibria.
    pub diagnostics: Vec<String>,
}

/// Outcome probabilities of one round.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransitionRow {
    pub to_a: f64,
    pub to_b: f64,
    pub absorb: f64,
}

impl TransitionRow {
    fn absorbing() -> Self {
        TransitionRow {
            to_a: 0.0,
            to_b: 0.0,
            absorb: 1.0,
        }
    }

    pub fn sum(&self) -> f64 {
        self.to_a + self.to_b + self.absorb
    }

    pub fn to(&self, g: Group) -> f64 {
        match g {
            Group::A => self.to_a,
            Group::B => self.to_b,
        }
    }
}

/// Builds the round for bid `q` with the given leader (`None` on the opening
/// bid).
///
/// With `i` bidders from A and `j` from B, A takes the lead with weight
/// `i/(i+j)`. Under [`TieRule::SingleIdentityA`] group A holds a single
/// ticket with probability `1 - (1 - beta_A)^eligible_A`.
pub fn build_transitions(
    a: &GroupSide,
    b: &GroupSide,
    tie_rule: TieRule,
    q: u64,
    leader: Option<Group>,
) -> Result<TransitionRow> {
    match leader {
        Some(Group::A) if a.size == 0 => return Err(ModelError::EmptyLeaderGroup(Group::A)),
        Some(Group::B) if b.size == 0 => return Err(ModelError::EmptyLeaderGroup(Group::B)),
        _ => {}
    }
    let beta_a = checked_beta(&a.beta, q, leader, "beta_A")?;
    let beta_b = checked_beta(&b.beta, q, leader, "beta_B")?;
    let pa = binomial_pmf(a.eligible(Group::A, leader), beta_a);
    let pb = binomial_pmf(b.eligible(Group::B, leader), beta_b);

    let absorb = pa[0] * pb[0];
    let (to_a, to_b) = match tie_rule {
        TieRule::UniformOverBidders => {
            let mut to_a = 0.0;
            let mut to_b = 0.0;
            for (i, &pi) in pa.iter().enumerate() {
                if pi == 0.0 {
                    continue;
                }
                for (j, &pj) in pb.iter().enumerate() {
                    if i + j == 0 {
                        continue;
                    }
                    let w = pi * pj / (i + j) as f64;
                    to_a += w * i as f64;
                    to_b += w * j as f64;
                }
            }
            (to_a, to_b)
        }
        TieRule::SingleIdentityA => {
            let mu_a = 1.0 - pa[0];
            let mut share_a = 0.0;
            let mut share_b = 0.0;
            for (j, &pj) in pb.iter().enumerate() {
                share_a += pj / (1 + j) as f64;
                share_b += pj * j as f64 / (1 + j) as f64;
            }
            let b_any = 1.0 - pb[0];
            (mu_a * share_a, pa[0] * b_any + mu_a * share_b)
        }
    };
    Ok(TransitionRow { to_a, to_b, absorb })
}

fn checked_beta(f: &BetaFn, q: u64, leader: Option<Group>, name: &'static str) -> Result<f64> {
    let beta = f(q, leader);
    if !(0.0..=1.0).contains(&beta) {
        return Err(crate::error::invalid(
            name,
            format!("bid probability {beta} at q={q} lies outside [0, 1]"),
        ));
    }
    Ok(beta)
}

impl TwoGroupChain {
    pub fn new(a: GroupSide, b: GroupSide, pricing: Pricing) -> Self {
        TwoGroupChain {
            a,
            b,
            tie_rule: TieRule::UniformOverBidders,
            time_homogeneous: matches!(pricing, Pricing::Fixed { .. }),
            horizon: Horizon::Unbounded,
            pricing,
            initial: None,
            diagnostics: Vec::new(),
        }
    }

    pub fn side(&self, g: Group) -> &GroupSide {
        match g {
            Group::A => &self.a,
            Group::B => &self.b,
        }
    }

    pub fn population(&self) -> u32 {
        self.a.size + self.b.size
    }

    pub fn initial_distribution(&self) -> Result<InitialDistribution> {
        if let Some(init) = self.initial {
            return Ok(init);
        }
        let row = build_transitions(&self.a, &self.b, self.tie_rule, 1, None)?;
        Ok(InitialDistribution {
            to_a: row.to_a,
            to_b: row.to_b,
            none: row.absorb,
        })
    }

    /// Round for bid `q >= 2` out of state `leader`. Bids past the horizon
    /// never happen, so those rounds absorb with certainty; so do rounds out
    /// of a state belonging to an empty group, which is unreachable.
    pub fn row(&self, q: u64, leader: Group) -> Result<TransitionRow> {
        if let Horizon::Bounded(h) = self.horizon {
            if q > h {
                return Ok(TransitionRow::absorbing());
            }
        }
        if self.side(leader).size == 0 {
            return Ok(TransitionRow::absorbing());
        }
        build_transitions(&self.a, &self.b, self.tie_rule, q, Some(leader))
    }

    pub fn absorption_closed_form(&self) -> Result<AbsorptionSummary> {
        absorption_closed_form(self)
    }

    pub fn evolve(&self) -> Result<OccupancySeries> {
        evolve_recurrence(self, None)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AbsorptionSummary {
    /// Success-conditioned distribution of the first leader.
    pub initial: [f64; 2],
    pub success_probability: f64,
    /// Expected visits `N[i][j]` to state `j` starting from state `i`.
    pub expected_visits: [[f64; 2]; 2],
    /// Expected number of bids from each starting state, counting the bid
    /// that created it.
    pub expected_total_bids: [f64; 2],
    /// Probability of being absorbed in `W_j` starting from state `i`.
    pub absorption_probs: [[f64; 2]; 2],
    /// `(P(W_A), P(W_B))` under the conditioned initial distribution.
    pub unconditional_w: [f64; 2],
    pub expected_bids: f64,
    pub fee_revenue: f64,
    pub price_revenue: f64,
    pub expected_revenue: f64,
}

/// Fundamental-matrix quantities of a time-homogeneous chain, by direct 2x2
/// inversion.
///
/// With `x_i` the absorption probability out of state `i`,
/// `det(I - Q) = x_A x_B + x_A p_BA + p_AB x_B`, which is a sum of
/// nonnegative terms and vanishes only when the chain never absorbs.
pub fn absorption_closed_form(chain: &TwoGroupChain) -> Result<AbsorptionSummary> {
    if !chain.time_homogeneous || !matches!(chain.horizon, Horizon::Unbounded) {
        return Err(ModelError::TimeInhomogeneous);
    }
    let init = chain.initial_distribution()?;
    let p0 = init.conditioned()?;
    let ra = chain.row(2, Group::A)?;
    let rb = chain.row(2, Group::B)?;
    summary_from_rows(chain, p0, init.success(), &ra, &rb)
}

fn summary_from_rows(
    chain: &TwoGroupChain,
    p0: [f64; 2],
    success: f64,
    ra: &TransitionRow,
    rb: &TransitionRow,
) -> Result<AbsorptionSummary> {
    let (x_a, x_b) = (ra.absorb, rb.absorb);
    let (p_ab, p_ba) = (ra.to_b, rb.to_a);
    let det = x_a * x_b + x_a * p_ba + p_ab * x_b;
    if det <= 0.0 || !det.is_finite() {
        return Err(ModelError::NonAbsorbing);
    }
    let n = [
        [(p_ba + x_b) / det, p_ab / det],
        [p_ba / det, (p_ab + x_a) / det],
    ];
    let t = [n[0][0] + n[0][1], n[1][0] + n[1][1]];
    let s = [
        [n[0][0] * x_a, n[0][1] * x_b],
        [n[1][0] * x_a, n[1][1] * x_b],
    ];
    let w = [
        p0[0] * s[0][0] + p0[1] * s[1][0],
        p0[0] * s[0][1] + p0[1] * s[1][1],
    ];
    let visits = [
        p0[0] * n[0][0] + p0[1] * n[1][0],
        p0[0] * n[0][1] + p0[1] * n[1][1],
    ];
    let fee_revenue = visits[0] * chain.a.fee.as_dollars() + visits[1] * chain.b.fee.as_dollars();
    let price = chain.pricing.price_after(0);
    let paying = w[0] * f64::from(u8::from(chain.a.pays_price))
        + w[1] * f64::from(u8::from(chain.b.pays_price));
    let price_revenue = price * paying;
    Ok(AbsorptionSummary {
        initial: p0,
        success_probability: success,
        expected_visits: n,
        expected_total_bids: t,
        absorption_probs: s,
        unconditional_w: w,
        expected_bids: visits[0] + visits[1],
        fee_revenue,
        price_revenue,
        expected_revenue: fee_revenue + price_revenue,
    })
}

/// Occupancy after `q` bids have been placed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Occupancy {
    pub q: u64,
    /// Probability that bid `q` happened and was placed by group A.
    pub p_a: f64,
    pub p_b: f64,
    /// Probability that the auction already ended with fewer than `q` bids
    /// and A won.
    pub p_wa: f64,
    pub p_wb: f64,
}

impl Occupancy {
    pub fn total(&self) -> f64 {
        self.p_a + self.p_b + self.p_wa + self.p_wb
    }

    pub fn transient(&self) -> f64 {
        self.p_a + self.p_b
    }
}

/// Success-conditioned occupancy series starting at `q = 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OccupancySeries {
    pub steps: Vec<Occupancy>,
    /// Transient mass left when evolution stopped.
    pub residual: f64,
    pub success_probability: f64,
}

impl OccupancySeries {
    pub fn last(&self) -> &Occupancy {
        self.steps.last().expect("series is never empty")
    }

    pub fn expected_bids(&self) -> f64 {
        self.steps.iter().map(Occupancy::transient).sum()
    }

    pub fn win_probabilities(&self) -> [f64; 2] {
        let l = self.last();
        [l.p_wa, l.p_wb]
    }

    /// `sum_q P_A(q) fee_A + P_B(q) fee_B`: every bid placed is charged.
    pub fn fee_revenue(&self, fee_a: Cents, fee_b: Cents) -> f64 {
        let (fa, fb) = (fee_a.as_dollars(), fee_b.as_dollars());
        self.steps.iter().map(|o| o.p_a * fa + o.p_b * fb).sum()
    }

    /// Probability, per winning group, that the auction ended after exactly
    /// `q` bids, paired with `q`.
    pub fn endings(&self) -> impl Iterator<Item = (u64, f64, f64)> + '_ {
        self.steps
            .windows(2)
            .map(|w| (w[0].q, w[1].p_wa - w[0].p_wa, w[1].p_wb - w[0].p_wb))
    }

    /// Expected final price collected from winners of the paying groups.
    pub fn price_revenue(&self, pricing: Pricing, a_pays: bool, b_pays: bool) -> f64 {
        self.endings()
            .map(|(q, ea, eb)| {
                let paying = if a_pays { ea } else { 0.0 } + if b_pays { eb } else { 0.0 };
                pricing.price_after(q) * paying
            })
            .sum()
    }
}

/// Forward recurrence `P(q+1) = P(q) * row(q+1)` over the transient states.
///
/// Bounded chains run until every bid is exhausted; unbounded ones until the
/// transient mass drops below [`TRUNCATION_MASS`] or `max_steps` (default
/// [`MAX_STEPS`]) is reached, with the leftover reported as `residual`.
pub fn evolve_recurrence(chain: &TwoGroupChain, max_steps: Option<u64>) -> Result<OccupancySeries> {
    let limit = match (chain.horizon, max_steps) {
        (Horizon::Bounded(0), _) => {
            return Err(crate::error::invalid(
                "horizon",
                "must allow at least one bid",
            ))
        }
        (_, Some(0)) => return Err(crate::error::invalid("max_steps", "must be positive")),
        (Horizon::Bounded(h), m) => m.map_or(h + 1, |m| m.min(h + 1)),
        (Horizon::Unbounded, m) => m.unwrap_or(MAX_STEPS),
    };
    let init = chain.initial_distribution()?;
    let p0 = init.conditioned()?;
    let mut cur = Occupancy {
        q: 1,
        p_a: p0[0],
        p_b: p0[1],
        p_wa: 0.0,
        p_wb: 0.0,
    };
    let mut steps = vec![cur];
    let mut cached: Option<(TransitionRow, TransitionRow)> = None;
    while cur.q < limit {
        if matches!(chain.horizon, Horizon::Unbounded) && cur.transient() < TRUNCATION_MASS {
            break;
        }
        let q = cur.q + 1;
        let (ra, rb) = match cached {
            Some(rows) => rows,
            None => {
                let rows = (chain.row(q, Group::A)?, chain.row(q, Group::B)?);
                if chain.time_homogeneous {
                    cached = Some(rows);
                }
                rows
            }
        };
        cur = Occupancy {
            q,
            p_a: cur.p_a * ra.to_a + cur.p_b * rb.to_a,
            p_b: cur.p_a * ra.to_b + cur.p_b * rb.to_b,
            p_wa: cur.p_wa + cur.p_a * ra.absorb,
            p_wb: cur.p_wb + cur.p_b * rb.absorb,
        };
        steps.push(cur);
        if matches!(chain.horizon, Horizon::Bounded(_)) && cur.transient() == 0.0 {
            break;
        }
    }
    let residual = cur.transient();
    Ok(OccupancySeries {
        steps,
        residual,
        success_probability: init.success(),
    })
}

/// Revenue implied by a series when both groups pay the final price.
pub fn expected_revenue_from_series(
    series: &OccupancySeries,
    fee_a: Cents,
    fee_b: Cents,
    pricing: Pricing,
) -> f64 {
    series.fee_revenue(fee_a, fee_b) + series.price_revenue(pricing, true, true)
}

/// Revenue of a chain computed through its recurrence, honouring which
/// groups pay the final price.
pub fn chain_revenue_from_series(chain: &TwoGroupChain, series: &OccupancySeries) -> f64 {
    series.fee_revenue(chain.a.fee, chain.b.fee)
        + series.price_revenue(chain.pricing, chain.a.pays_price, chain.b.pays_price)
}
