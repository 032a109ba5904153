//! Exact no-arbitrage, super-replication and maximal-claim analysis for
//! finite event-tree markets in which some assets cannot be sold short.
//!
//! Every decision (existence of an equivalent supermartingale measure,
//! attainment of a supremum by a strictly positive measure, domination of a
//! payoff) is made by an exact-rational simplex solver in [`lp`]. Floating
//! point only appears in [`experiments`].
//!
//! On a finite tree with a finite horizon every local (super)martingale is a
//! true (super)martingale and the cone of super-hedgeable payoffs is closed,
//! so "equivalent local martingale measure" coincides with "equivalent
//! martingale measure" and NFLVR coincides with NA. The crate decides NA and
//! the martingale conditions directly.

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod experiments;
#[cfg(test)]
mod fixtures;
pub mod ftap;
pub mod hedging;
pub mod io;
mod layout;
mod linalg;
pub mod lp;
pub mod market;
pub mod maximality;
pub mod measures;
pub mod numeraire;
pub mod rational;

pub use error::{Error, Result};
pub use ftap::{esmm_feasibility, find_arbitrage, Arbitrage};
pub use hedging::{
    is_attainable, price_process, superhedge, superreplication_price, Attainability, HedgePrice,
    Superhedge,
};
pub use market::{Claim, EventTree, MarketModel, Strategy, ValueProcess};
pub use measures::{Measure, MeasureClass};
pub use rational::Rational;
