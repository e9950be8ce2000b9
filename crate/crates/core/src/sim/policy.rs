use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::markov::{BetaFn, Group, TieRule, TwoGroupChain};
use crate::model::AuctionSpec;
use crate::money::Cents;
use crate::scenarios::{perceived_symmetric_beta, CommittedPolicy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Role {
    Regular,
    Shill,
    Committed,
    CoalitionMember,
}

/// What a player can see when deciding on bid `q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BidContext {
    pub q: u64,
    pub am_leader: bool,
    pub leader_group: Option<Group>,
    pub my_spend: Cents,
}

#[derive(Clone)]
pub enum BidRule {
    /// One probability for every member, from the bid index and the
    /// leader's group.
    Shared(BetaFn),
    /// Evaluated separately for each member.
    PerPlayer(Arc<dyn Fn(&BidContext) -> f64 + Send + Sync>),
}

impl fmt::Debug for BidRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BidRule::Shared(_) => f.write_str("Shared(..)"),
            BidRule::PerPlayer(_) => f.write_str("PerPlayer(..)"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PlayerClass {
    pub group: Group,
    pub size: u32,
    pub fee: Cents,
    pub role: Role,
    pub pays_price: bool,
    pub rebids_when_leading: bool,
    pub rule: BidRule,
}

impl PlayerClass {
    pub fn shared(group: Group, size: u32, fee: Cents, beta: BetaFn) -> Self {
        PlayerClass {
            group,
            size,
            fee,
            role: Role::Regular,
            pays_price: true,
            rebids_when_leading: false,
            rule: BidRule::Shared(beta),
        }
    }
}

/// All players in an auction; ids run contiguously through the classes.
#[derive(Debug, Clone, Default)]
pub struct Population {
    pub classes: Vec<PlayerClass>,
}

impl Population {
    pub fn new(classes: Vec<PlayerClass>) -> Self {
        Population { classes }
    }

    pub fn size(&self) -> u32 {
        self.classes.iter().map(|c| c.size).sum()
    }

    /// First player id of each class.
    pub fn offsets(&self) -> Vec<u32> {
        let mut acc = 0;
        self.classes
            .iter()
            .map(|c| {
                let start = acc;
                acc += c.size;
                start
            })
            .collect()
    }

    pub fn group_of(&self, player: u32) -> Group {
        let mut acc = 0;
        for c in &self.classes {
            acc += c.size;
            if player < acc {
                return c.group;
            }
        }
        panic!("player {player} outside a population of {acc}")
    }

    /// Everybody plays the symmetric equilibrium of `spec`.
    pub fn symmetric(spec: &AuctionSpec) -> Self {
        let beta = perceived_symmetric_beta(spec.v(), spec.b(), spec.population, spec.kind);
        Population::new(vec![PlayerClass::shared(
            Group::B,
            spec.population,
            spec.bid_fee,
            beta,
        )])
    }

    /// Players realising the bid probabilities of a chain. A coalition that
    /// bids through a single identity becomes one player whose probability
    /// is the coalition's collective one.
    pub fn from_chain(chain: &TwoGroupChain) -> Self {
        let mut classes = Vec::new();
        let a = &chain.a;
        if a.size > 0 {
            let mut class = PlayerClass::shared(Group::A, a.size, a.fee, a.beta.clone());
            class.pays_price = a.pays_price;
            class.rebids_when_leading = a.rebids_when_leading;
            if chain.tie_rule == TieRule::SingleIdentityA {
                let beta = a.beta.clone();
                let size = a.size;
                let rebids = a.rebids_when_leading;
                class.size = 1;
                class.role = Role::CoalitionMember;
                class.rebids_when_leading = true;
                class.rule = BidRule::Shared(Arc::new(move |q, leader| {
                    let eligible = if leader == Some(Group::A) && !rebids {
                        size - 1
                    } else {
                        size
                    };
                    let p = beta(q, leader);
                    1.0 - (1.0 - p).powi(eligible as i32)
                }));
            }
            classes.push(class);
        }
        let b = &chain.b;
        if b.size > 0 {
            let mut class = PlayerClass::shared(Group::B, b.size, b.fee, b.beta.clone());
            class.pays_price = b.pays_price;
            class.rebids_when_leading = b.rebids_when_leading;
            classes.push(class);
        }
        Population::new(classes)
    }

    /// One committed player (group A) against `n - 1` symmetric players.
    pub fn committed(spec: &AuctionSpec, policy: CommittedPolicy) -> Result<Self> {
        spec.validate()?;
        if policy.alpha <= 1.0 {
            return Err(invalid("alpha", "committed play needs alpha > 1"));
        }
        let s = *spec;
        let rule: Arc<dyn Fn(&BidContext) -> f64 + Send + Sync> = Arc::new(move |ctx| {
            let paid = (ctx.my_spend.0 / s.bid_fee.0) as u64;
            if !ctx.am_leader && policy.bids(&s, ctx.q, paid) {
                1.0
            } else {
                0.0
            }
        });
        let committed = PlayerClass {
            group: Group::A,
            size: 1,
            fee: spec.bid_fee,
            role: Role::Committed,
            pays_price: true,
            rebids_when_leading: false,
            rule: BidRule::PerPlayer(rule),
        };
        let beta = perceived_symmetric_beta(spec.v(), spec.b(), spec.population, spec.kind);
        let others = PlayerClass::shared(Group::B, spec.population - 1, spec.bid_fee, beta);
        Ok(Population::new(vec![committed, others]))
    }
}
