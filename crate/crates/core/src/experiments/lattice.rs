//! Super-replication prices without short sales along families of binomial
//! lattices of growing depth.
//!
//! On a binomial tree with `down < 1 <= up` a supermartingale measure may
//! put all its mass on the all-down path, which is where the digital
//! `1{S_T <= S_0}`, the put `(K - S_T)+` and the reciprocal `1/S_T` pay
//! most. The prices are therefore exactly `1`, `K - down^n S_0` and
//! `1 / (down^n S_0)`; the study computes them with the exact pricer and
//! reports the expected closed form next to each.

use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ftap::esmm_feasibility;
use crate::hedging::superreplication_price;
use crate::market::{Claim, MarketModel};
use crate::rational::{format, from_f64_rounded, to_f64, Rational};

/// Denominator used to rationalize CRR up-factors.
pub const DENOMINATOR: i64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeKind {
    Digital,
    Put,
    Reciprocal,
}

impl FromStr for LatticeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "digital" => Ok(LatticeKind::Digital),
            "put" => Ok(LatticeKind::Put),
            "reciprocal" => Ok(LatticeKind::Reciprocal),
            _ => Err(Error::Parse(format!("unknown lattice kind {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LatticeParams {
    /// Same factors at every depth.
    Fixed {
        s0: Rational,
        strike: Rational,
        up: Rational,
        down: Rational,
    },
    /// Cox–Ross–Rubinstein: `up = exp(σ sqrt(T/n))` rounded to a fraction
    /// with denominator [`DENOMINATOR`], `down = 1/up`.
    Crr {
        s0: Rational,
        strike: Rational,
        sigma: f64,
        t: f64,
    },
}

impl LatticeParams {
    pub fn factors(&self, n: usize) -> Result<(Rational, Rational)> {
        match self {
            LatticeParams::Fixed { up, down, .. } => Ok((up.clone(), down.clone())),
            LatticeParams::Crr { sigma, t, .. } => {
                if !(*sigma > 0.0 && *t > 0.0) || n == 0 {
                    return Err(Error::Domain(
                        "CRR needs sigma, T and the depth positive".into(),
                    ));
                }
                let up = from_f64_rounded((sigma * (t / n as f64).sqrt()).exp(), DENOMINATOR)
                    .ok_or_else(|| Error::Domain("CRR up-factor not finite".into()))?;
                let down = up.recip();
                Ok((up, down))
            }
        }
    }

    fn s0(&self) -> &Rational {
        match self {
            LatticeParams::Fixed { s0, .. } | LatticeParams::Crr { s0, .. } => s0,
        }
    }

    fn strike(&self) -> &Rational {
        match self {
            LatticeParams::Fixed { strike, .. } | LatticeParams::Crr { strike, .. } => strike,
        }
    }
}

/// One CSV row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LatticeRow {
    pub seed: u64,
    pub kind: LatticeKind,
    pub depth: usize,
    pub up: String,
    pub down: String,
    /// Exact price as a fraction.
    pub price: String,
    pub price_f64: f64,
    /// Closed form on the all-down path.
    pub expected: String,
    pub matches_expected: bool,
    pub attained_by_equivalent: bool,
    /// Price ratio to the previous depth (empty on the first row).
    pub growth: Option<f64>,
    #[serde(skip)]
    pub exact_price: Rational,
}

fn claim_for(kind: LatticeKind, model: &MarketModel, s0: &Rational, strike: &Rational) -> Claim {
    Claim::from_fn(model.tree(), |l| {
        let s = &model.price(l)[0];
        match kind {
            LatticeKind::Digital if s <= s0 => Rational::one(),
            LatticeKind::Digital => Rational::zero(),
            LatticeKind::Put => std::cmp::max(Rational::zero(), strike - s),
            LatticeKind::Reciprocal => s.recip(),
        }
    })
}

fn expected_price(
    kind: LatticeKind,
    s0: &Rational,
    strike: &Rational,
    down: &Rational,
    n: usize,
) -> Rational {
    let bottom = s0 * num_traits::pow(down.clone(), n);
    match kind {
        LatticeKind::Digital => Rational::one(),
        LatticeKind::Put => std::cmp::max(Rational::zero(), strike - bottom),
        LatticeKind::Reciprocal => bottom.recip(),
    }
}

pub fn lattice_family_study(
    kind: LatticeKind,
    depths: &[usize],
    params: &LatticeParams,
    seed: u64,
) -> Result<Vec<LatticeRow>> {
    let s0 = params.s0();
    if *s0 <= Rational::zero() {
        return Err(Error::Domain("S0 must be positive".into()));
    }
    let mut rows: Vec<LatticeRow> = Vec::with_capacity(depths.len());
    for &n in depths {
        let (up, down) = params.factors(n)?;
        if !(down < Rational::one() && down > Rational::zero() && up >= Rational::one()) {
            return Err(Error::Domain(format!(
                "need 0 < down < 1 <= up, got up {up}, down {down}"
            )));
        }
        let model = MarketModel::binomial(s0.clone(), up.clone(), down.clone(), n, 0)?;
        if esmm_feasibility(&model)?.is_none() {
            return Err(Error::NoEquivalentMeasure);
        }
        let claim = claim_for(kind, &model, s0, params.strike());
        let price = superreplication_price(&model, &claim)?;
        let expected = expected_price(kind, s0, params.strike(), &down, n);
        let price_f64 = to_f64(&price.value);
        let growth = rows.last().map(|prev| price_f64 / prev.price_f64);
        rows.push(LatticeRow {
            seed,
            kind,
            depth: n,
            up: format(&up),
            down: format(&down),
            price: format(&price.value),
            price_f64,
            expected: format(&expected),
            matches_expected: price.value == expected,
            attained_by_equivalent: price.attained_by_equivalent,
            growth,
            exact_price: price.value,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn halving() -> LatticeParams {
        LatticeParams::Fixed {
            s0: int(1),
            strike: int(1),
            up: int(2),
            down: ratio(1, 2),
        }
    }

    #[test]
    fn put_at_depth_four() {
        let rows = lattice_family_study(LatticeKind::Put, &[4], &halving(), 0).unwrap();
        assert_eq!(rows[0].exact_price, ratio(15, 16));
        assert!(rows[0].matches_expected);
    }

    #[test]
    fn digital_is_one_on_crr() {
        let p = LatticeParams::Crr {
            s0: int(1),
            strike: int(1),
            sigma: 0.2,
            t: 1.0,
        };
        for r in lattice_family_study(LatticeKind::Digital, &[1, 2, 3, 4], &p, 0).unwrap() {
            assert_eq!(r.exact_price, int(1));
            assert!(!r.attained_by_equivalent);
        }
    }

    #[test]
    fn reciprocal_grows() {
        let rows = lattice_family_study(LatticeKind::Reciprocal, &[1, 2], &halving(), 0).unwrap();
        assert!(rows[1].exact_price > rows[0].exact_price);
        assert_eq!(rows[1].growth, Some(2.0));
    }

    #[test]
    fn arbitrage_parameters_rejected() {
        let p = LatticeParams::Fixed {
            s0: int(1),
            strike: int(1),
            up: int(2),
            down: int(1),
        };
        assert!(lattice_family_study(LatticeKind::Put, &[1], &p, 0).is_err());
    }
}
