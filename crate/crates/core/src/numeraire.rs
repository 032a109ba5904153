//! Change of numeraire.
//!
//! Dividing every price by a strictly positive process `V` and adding `1/V`
//! (the old unit of account) as a shortable asset gives a market priced in
//! units of `V`. Short-sale constraints carry over unchanged: a constrained
//! asset stays constrained.

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::ftap::esmm_feasibility;
use crate::layout::{sum_forms, HoldingLayout};
use crate::lp::{self, LinearProgram, LpStatus, Relation, VarBound};
use crate::market::{stochastic_integral, MarketModel, NodeId, Strategy};
use crate::rational::{dot, format, max_abs, one, zero, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct NumeraireProcess {
    pub values: Vec<Rational>,
}

impl NumeraireProcess {
    pub fn new(model: &MarketModel, values: Vec<Rational>) -> Result<Self> {
        if values.len() != model.tree().len() {
            return Err(Error::DimensionMismatch {
                expected: model.tree().len(),
                found: values.len(),
            });
        }
        if let Some((node, v)) = values.iter().enumerate().find(|(_, v)| !v.is_positive()) {
            return Err(Error::NonPositiveNumeraire {
                node,
                value: format(v),
            });
        }
        Ok(NumeraireProcess { values })
    }

    /// `V = a + (H·S)`, the wealth of a strategy started from capital `a`.
    pub fn from_wealth(model: &MarketModel, strategy: &Strategy, a: &Rational) -> Result<Self> {
        let gains = stochastic_integral(model, strategy)?;
        Self::new(model, gains.values.iter().map(|g| a + g).collect())
    }

    pub fn reciprocal(&self) -> NumeraireProcess {
        NumeraireProcess {
            values: self.values.iter().map(|v| v.recip()).collect(),
        }
    }
}

/// Market `[1/V, S/V]` with `1/V` and the originally shortable assets
/// shortable.
pub fn change_numeraire(model: &MarketModel, v: &NumeraireProcess) -> Result<MarketModel> {
    let v = NumeraireProcess::new(model, v.values.clone())?;
    let prices = (0..model.tree().len())
        .map(|n| {
            let inv = v.values[n].recip();
            std::iter::once(inv.clone())
                .chain(model.price(n).iter().map(|s| s * &inv))
                .collect()
        })
        .collect();
    MarketModel::new(model.tree().clone(), prices, model.shortable_count() + 1)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransportReport {
    /// `(H·M)_n = H_n·M_n - H_0·M_0` at every node, `M = (S/V, 1/V, 1)`.
    pub self_financing_in_m: bool,
    /// Same identity for `N = (S, 1, V)`.
    pub self_financing_in_n: bool,
    pub first_violation_m: Option<NodeId>,
    pub first_violation_n: Option<NodeId>,
}

impl TransportReport {
    pub fn agree(&self) -> bool {
        self.self_financing_in_m == self.self_financing_in_n
    }
}

/// Checks whether a strategy with `N + 2` components is self-financing for
/// prices `(S/V, 1/V, 1)` and for `(S, 1, V)`. At terminal nodes the holding
/// is the one carried in from the parent.
pub fn self_financing_transport(
    model: &MarketModel,
    v: &NumeraireProcess,
    strategy: &Strategy,
) -> Result<TransportReport> {
    let v = NumeraireProcess::new(model, v.values.clone())?;
    let tree = model.tree();
    let width = model.n_assets() + 2;
    for h in strategy.holdings.iter().flatten() {
        if h.len() != width {
            return Err(Error::DimensionMismatch {
                expected: width,
                found: h.len(),
            });
        }
    }
    let mut m_prices = Vec::with_capacity(tree.len());
    let mut n_prices = Vec::with_capacity(tree.len());
    for n in 0..tree.len() {
        let inv = v.values[n].recip();
        let mut m: Vec<Rational> = model.price(n).iter().map(|s| s * &inv).collect();
        m.push(inv);
        m.push(one());
        let mut p: Vec<Rational> = model.price(n).to_vec();
        p.push(one());
        p.push(v.values[n].clone());
        m_prices.push(m);
        n_prices.push(p);
    }
    let check = |prices: Vec<Vec<Rational>>| -> Result<Option<NodeId>> {
        let market = MarketModel::new(tree.clone(), prices, width)?;
        let gains = stochastic_integral(&market, strategy)?;
        let root = tree.root();
        let Some(h0) = strategy.holding(root) else {
            return Ok(None);
        };
        let start = dot(h0, market.price(root));
        for &n in tree.preorder() {
            let held = if tree.is_leaf(n) {
                match tree.parent(n) {
                    Some(p) => strategy.holding(p),
                    None => continue,
                }
            } else {
                strategy.holding(n)
            };
            let held = held.ok_or_else(|| Error::Structure(format!("no holding at node {n}")))?;
            if gains.values[n] != dot(held, market.price(n)) - &start {
                return Ok(Some(n));
            }
        }
        Ok(None)
    };
    let first_violation_m = check(m_prices)?;
    let first_violation_n = check(n_prices)?;
    Ok(TransportReport {
        self_financing_in_m: first_violation_m.is_none(),
        self_financing_in_n: first_violation_n.is_none(),
        first_violation_m,
        first_violation_n,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct NumeraireNaReport {
    /// No arbitrage in the market priced in units of `V`.
    pub no_arbitrage_after_change: bool,
    /// `V_T - V_0` is maximal in the domination set over `(S, V)`.
    pub maximal_in_d: bool,
    pub box_bound: Rational,
    /// Strategy in `(S, V)` whose payoff strictly dominates `V_T - V_0`.
    pub dominating: Option<Strategy>,
}

impl NumeraireNaReport {
    pub fn agree(&self) -> bool {
        self.no_arbitrage_after_change == self.maximal_in_d
    }
}

/// Decides both sides of the numeraire lemma independently: NA in the
/// transformed market through the measure LP, and maximality of
/// `V_T - V_0` among payoffs `(K·(S, V))_T` with `K¹` obeying the original
/// short-sale constraint and `(K - (0, 1))·(S, V) >= -alpha V`.
///
/// The domination LP works with the deviation `E = K - (0, 1)`, capped at a
/// box (deviations scale, so the verdict does not depend on it).
pub fn na_after_numeraire_check(
    model: &MarketModel,
    v: &NumeraireProcess,
) -> Result<NumeraireNaReport> {
    let transformed = change_numeraire(model, v)?;
    let no_arbitrage_after_change = esmm_feasibility(&transformed)?.is_some();
    let bound = one() + max_abs(model.prices().iter().flatten().chain(v.values.iter()));
    let (maximal_in_d, dominating) = maximal_in_d(model, v, &bound)?;
    Ok(NumeraireNaReport {
        no_arbitrage_after_change,
        maximal_in_d,
        box_bound: bound,
        dominating,
    })
}

/// Domination test behind [`na_after_numeraire_check`] with an explicit box.
pub fn maximal_in_d(
    model: &MarketModel,
    v: &NumeraireProcess,
    bound: &Rational,
) -> Result<(bool, Option<Strategy>)> {
    let v = NumeraireProcess::new(model, v.values.clone())?;
    let tree = model.tree();
    let prices: Vec<Vec<Rational>> = (0..tree.len())
        .map(|n| {
            model
                .price(n)
                .iter()
                .cloned()
                .chain(std::iter::once(v.values[n].clone()))
                .collect()
        })
        .collect();
    let width = model.n_assets() + 1;
    let layout = HoldingLayout::new(tree, width, 0);
    let mut lp = LinearProgram::new(layout.len());
    layout.apply_short_sale_bounds(&mut lp, model.shortable_count());
    // the V position is unconstrained
    for n in tree.internal_nodes() {
        lp.set_free(layout.var(n, model.n_assets()));
    }
    let alpha = lp.add_variable(VarBound::NonNegative);
    layout.add_box(&mut lp, bound);
    lp.add_sparse(&[(alpha, one())], Relation::Le, bound.clone());
    let forms = layout.gains_forms(tree, &prices);
    for &n in tree.preorder() {
        if tree.parent(n).is_none() {
            continue;
        }
        let mut floor = forms[n].clone();
        floor.push((alpha, v.values[n].clone()));
        lp.add_sparse(&floor, Relation::Ge, zero());
        if tree.is_leaf(n) {
            lp.add_sparse(&forms[n], Relation::Ge, zero());
        }
    }
    lp.maximize(sum_forms(
        tree.leaves().iter().map(|&l| &forms[l]),
        lp.num_vars(),
    ));
    let out = lp::solve(&lp)?;
    if out.status != LpStatus::Optimal {
        return Err(Error::Internal(format!(
            "D-domination LP returned {:?}",
            out.status
        )));
    }
    if !out
        .objective_value
        .as_ref()
        .is_some_and(|x| x.is_positive())
    {
        return Ok((true, None));
    }
    let mut k = layout.decode(tree, &out.primal.expect("optimal"));
    for h in k.holdings.iter_mut().flatten() {
        let last = h.last_mut().expect("nonempty holding");
        *last += Rational::one();
    }
    Ok((false, Some(k)))
}

/// Transforming by `V` and then by `W = 1/V` (in the new units) returns the
/// original market up to asset order: `[V, 1, S]`.
pub fn involution_holds(model: &MarketModel, v: &NumeraireProcess) -> Result<bool> {
    let once = change_numeraire(model, v)?;
    let twice = change_numeraire(&once, &v.reciprocal())?;
    for n in 0..model.tree().len() {
        let p = twice.price(n);
        if p[0] != v.values[n] || !p[1].is_one() || p[2..] != *model.price(n) {
            return Ok(false);
        }
    }
    Ok(twice.shortable_count() == model.shortable_count() + 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{binomial_1, one_period};
    use crate::rational::{int, ratio};

    #[test]
    fn constant_numeraire_rescales_prices() {
        let m = binomial_1();
        let v = NumeraireProcess::new(&m, vec![int(2); 3]).unwrap();
        let t = change_numeraire(&m, &v).unwrap();
        assert_eq!(t.price(0), &[ratio(1, 2), ratio(1, 2)]);
        assert_eq!(t.price(1), &[ratio(1, 2), int(1)]);
        assert_eq!(t.shortable_count(), 1);
        assert!(esmm_feasibility(&t).unwrap().is_some());
    }

    #[test]
    fn nonpositive_numeraire_rejected() {
        let m = binomial_1();
        let err = NumeraireProcess::new(&m, vec![int(1), int(0), int(1)]).unwrap_err();
        assert!(matches!(err, Error::NonPositiveNumeraire { node: 1, .. }));
    }

    #[test]
    fn stock_as_numeraire() {
        // V = S: transformed prices are (1/S, 1); 1/S rises from 1 to 2 on the down move
        let m = binomial_1();
        let v =
            NumeraireProcess::new(&m, m.prices().iter().map(|p| p[0].clone()).collect()).unwrap();
        let report = na_after_numeraire_check(&m, &v).unwrap();
        assert!(report.agree());
        assert!(report.no_arbitrage_after_change);
        assert!(involution_holds(&m, &v).unwrap());
    }

    #[test]
    fn numeraire_that_strictly_outperforms_cash_with_short_stock() {
        // shortable stock that only rises is an arbitrage before and after
        let m = one_period(&[int(1), int(2), int(3)], 1);
        let v = NumeraireProcess::new(&m, vec![int(1), int(1), int(1)]).unwrap();
        let report = na_after_numeraire_check(&m, &v).unwrap();
        assert!(!report.no_arbitrage_after_change);
        assert!(!report.maximal_in_d);
        assert!(report.dominating.is_some());
    }

    #[test]
    fn transport_of_buy_and_hold() {
        let m = binomial_1();
        let v = NumeraireProcess::new(&m, vec![int(1), int(3), ratio(1, 3)]).unwrap();
        // hold one stock, nothing else: not self-financing in M unless compensated
        let h = Strategy::constant(&m, vec![int(1), int(0), int(0)]);
        let r = self_financing_transport(&m, &v, &h).unwrap();
        assert!(r.agree());
        assert!(r.self_financing_in_n);
        let bad = Strategy::from_fn(&m, |_| vec![int(1), int(0), int(0)]);
        assert!(self_financing_transport(&m, &v, &bad).unwrap().agree());
    }

    #[test]
    fn transport_dimension_checked() {
        let m = binomial_1();
        let v = NumeraireProcess::new(&m, vec![int(1); 3]).unwrap();
        let h = Strategy::constant(&m, vec![int(1)]);
        assert!(matches!(
            self_financing_transport(&m, &v, &h),
            Err(Error::DimensionMismatch {
                expected: 3,
                found: 1
            })
        ));
    }
}
