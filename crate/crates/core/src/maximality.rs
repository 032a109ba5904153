//! Maximal claims.
//!
//! For a claim `f` bounded below, [`classify_maximal`] evaluates the three
//! characterizations that must agree when an equivalent supermartingale
//! measure exists:
//!
//! * (ii) `sup_Q E^Q[f] = 0` and the supremum is reached by a strictly
//!   positive measure `R*`;
//! * (iii) `f = (H·S)_T` for an admissible `H` whose gains are an
//!   `R`-martingale for some equivalent supermartingale measure `R`;
//! * (iv) when an equivalent martingale measure exists: `f = (H·S)_T` with
//!   `(H·S)` a martingale under every such measure, checked on every vertex
//!   of the closed martingale-measure polytope.
//!
//! (ii) is computed from the pricing LP and (iii) from an independent
//! replication LP, so their agreement is a real check.
//!
//! [`maximality_in_b`] decides condition (i)(b): whether the payoff of an
//! admissible strategy can be dominated in the auxiliary market made of its
//! own gains process and the original assets. The constants `alpha` and
//! `beta` of that set are unbounded in principle; the LP caps them (and the
//! holdings) at a box reported with the verdict. Domination is invariant
//! under scaling the deviation from buy-and-hold, so the verdict does not
//! depend on the box size.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::ftap::{elmm_feasibility, esmm_feasibility};
use crate::hedging::superreplication_price_shifted;
use crate::layout::{sum_forms, HoldingLayout};
use crate::lp::{self, LinearProgram, LpStatus, Relation, VarBound};
use crate::market::{is_admissible, stochastic_integral, Claim, MarketModel, Strategy};
use crate::measures::{
    martingale_polytope_vertices, measure_polytope, process_trend, Measure, PolytopeKind, Trend,
};
use crate::rational::{max_abs, one, zero, Rational};

/// Cap on the number of martingale-polytope vertices enumerated for (iv).
pub const VERTEX_LIMIT: usize = 200_000;

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionII {
    pub holds: bool,
    pub r_star: Option<Measure>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionIII {
    pub holds: bool,
    /// Replicating strategy, whenever `f` is a terminal gain at all.
    pub strategy: Option<Strategy>,
    /// Equivalent supermartingale measure making the gains a martingale.
    pub measure: Option<Measure>,
    /// Whether the (ii) witness `R*` also makes these gains a martingale.
    pub certified_by_r_star: Option<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionIV {
    /// False when no equivalent martingale measure exists.
    pub applicable: bool,
    pub holds: Option<bool>,
    pub vertices_checked: usize,
    pub counterexample: Option<Measure>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaximalityReport {
    /// `sup_Q E^Q[f]` over equivalent supermartingale measures.
    pub price: Rational,
    pub condition_ii: ConditionII,
    pub condition_iii: ConditionIII,
    pub condition_iv: ConditionIV,
}

/// A strategy with `(H·S)_T = f` exactly, if any.
pub fn replicate(model: &MarketModel, claim: &Claim) -> Result<Option<Strategy>> {
    let tree = model.tree();
    claim.check_len(tree)?;
    let layout = HoldingLayout::new(tree, model.n_assets(), 0);
    let mut lp = LinearProgram::new(layout.len());
    layout.apply_short_sale_bounds(&mut lp, model.shortable_count());
    let forms = layout.gains_forms(tree, model.prices());
    for (k, &l) in tree.leaves().iter().enumerate() {
        lp.add_sparse(&forms[l], Relation::Eq, claim.payoff[k].clone());
    }
    let out = lp::solve(&lp)?;
    Ok(match out.status {
        LpStatus::Optimal => Some(layout.decode(tree, &out.primal.expect("optimal"))),
        _ => None,
    })
}

fn is_martingale_under(model: &MarketModel, strategy: &Strategy, q: &Measure) -> Result<bool> {
    let gains = stochastic_integral(model, strategy)?;
    Ok(process_trend(model.tree(), q, &gains.values) == Trend::Martingale)
}

pub fn classify_maximal(model: &MarketModel, claim: &Claim) -> Result<MaximalityReport> {
    if esmm_feasibility(model)?.is_none() {
        return Err(Error::NoEquivalentMeasure);
    }
    let tree = model.tree();
    claim.check_len(tree)?;

    let price = superreplication_price_shifted(model, claim)?;
    let ii_holds = price.value.is_zero() && price.attained_by_equivalent;
    let condition_ii = ConditionII {
        holds: ii_holds,
        r_star: ii_holds.then(|| price.witness_measure.clone()),
    };

    let strategy = replicate(model, claim)?;
    let mut zero_mean = measure_polytope(model, PolytopeKind::Supermartingale);
    zero_mean.add_constraint(claim.payoff.clone(), Relation::Eq, zero());
    let strict: Vec<usize> = (0..tree.leaf_count()).collect();
    let r = lp::strict_interior_point(&zero_mean, &strict)?.map(|weights| Measure { weights });
    let (iii_holds, iii_measure) = match (&strategy, r) {
        (Some(h), Some(r)) => (is_martingale_under(model, h, &r)?, Some(r)),
        (_, r) => (false, r),
    };
    let certified_by_r_star = match (&strategy, &condition_ii.r_star) {
        (Some(h), Some(r)) => Some(is_martingale_under(model, h, r)?),
        _ => None,
    };
    let condition_iii = ConditionIII {
        holds: iii_holds,
        strategy: strategy.clone(),
        measure: if iii_holds { iii_measure } else { None },
        certified_by_r_star,
    };

    let condition_iv = if elmm_feasibility(model)?.is_none() {
        ConditionIV {
            applicable: false,
            holds: None,
            vertices_checked: 0,
            counterexample: None,
        }
    } else {
        let vertices = martingale_polytope_vertices(model, VERTEX_LIMIT)?;
        let mut counterexample = None;
        if let Some(h) = &strategy {
            for q in &vertices {
                if !q.expectation(claim).is_zero() || !is_martingale_under(model, h, q)? {
                    counterexample = Some(q.clone());
                    break;
                }
            }
        }
        ConditionIV {
            applicable: true,
            holds: Some(strategy.is_some() && counterexample.is_none()),
            vertices_checked: vertices.len(),
            counterexample,
        }
    };

    Ok(MaximalityReport {
        price: price.value,
        condition_ii,
        condition_iii,
        condition_iv,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct KMaximality {
    pub maximal: bool,
    /// Admissible strategy whose terminal gains dominate the claim strictly.
    pub dominating: Option<Strategy>,
}

/// Whether `f` is a terminal gain of an admissible strategy that no other
/// admissible terminal gain dominates.
///
/// Solves `max sum_leaves ((K·S)_T - f)` subject to `(K·S)_T >= f`. The
/// optimum is bounded whenever an equivalent supermartingale measure exists
/// (the dominating surplus has nonpositive expectation under it), so no box
/// is needed: `f` is maximal iff the optimum is zero, and an infeasible
/// program means `f` is not a terminal gain at all.
pub fn is_maximal_in_k(model: &MarketModel, claim: &Claim) -> Result<KMaximality> {
    if esmm_feasibility(model)?.is_none() {
        return Err(Error::NoEquivalentMeasure);
    }
    let tree = model.tree();
    claim.check_len(tree)?;
    let layout = HoldingLayout::new(tree, model.n_assets(), 0);
    let mut lp = LinearProgram::new(layout.len());
    layout.apply_short_sale_bounds(&mut lp, model.shortable_count());
    let forms = layout.gains_forms(tree, model.prices());
    for (k, &l) in tree.leaves().iter().enumerate() {
        lp.add_sparse(&forms[l], Relation::Ge, claim.payoff[k].clone());
    }
    lp.maximize(sum_forms(
        tree.leaves().iter().map(|&l| &forms[l]),
        lp.num_vars(),
    ));
    let out = lp::solve(&lp)?;
    match out.status {
        LpStatus::Infeasible => Ok(KMaximality {
            maximal: false,
            dominating: None,
        }),
        LpStatus::Unbounded => Err(Error::Internal("domination LP unbounded".into())),
        LpStatus::Optimal => {
            let total: Rational = claim.payoff.iter().sum();
            let surplus = out.objective_value.expect("optimal") - total;
            if surplus.is_zero() {
                Ok(KMaximality {
                    maximal: true,
                    dominating: None,
                })
            } else {
                let k = layout.decode(tree, &out.primal.expect("optimal"));
                Ok(KMaximality {
                    maximal: false,
                    dominating: Some(k),
                })
            }
        }
    }
}

/// The market in which the gains process `(H·S)` of `strategy` trades as a
/// shortable asset next to the original assets (which keep their short-sale
/// partition). The gains are shifted by a constant to keep prices
/// nonnegative, which changes no trading gains.
pub fn auxiliary_market(model: &MarketModel, strategy: &Strategy) -> Result<MarketModel> {
    let gains = stochastic_integral(model, strategy)?;
    let shift = std::cmp::max(zero(), -gains.min());
    let prices = (0..model.tree().len())
        .map(|v| {
            std::iter::once(&gains.values[v] + &shift)
                .chain(model.price(v).iter().cloned())
                .collect()
        })
        .collect();
    MarketModel::new(model.tree().clone(), prices, model.shortable_count() + 1)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BMaximality {
    pub maximal: bool,
    /// Cap applied to holdings, `alpha` and `beta`.
    pub box_bound: Rational,
    /// Dominating holdings in the auxiliary market: position in the gains
    /// asset first, then the original assets.
    pub dominating: Option<Strategy>,
}

/// Default box: one plus the largest absolute price in the auxiliary
/// market.
pub fn default_box(model: &MarketModel, strategy: &Strategy) -> Result<Rational> {
    let gains = stochastic_integral(model, strategy)?;
    let biggest = max_abs(gains.values.iter().chain(model.prices().iter().flatten()));
    Ok(one() + biggest)
}

/// Whether the payoff of an admissible `strategy` is maximal among payoffs
/// `((H¹, H²)·(S¹, S))_T` with `S¹ = (strategy·S)`, `H²` obeying the
/// short-sale constraint and `(H¹ - 1, H²)·(S¹, S) >= -beta - alpha S¹`.
pub fn maximality_in_b(model: &MarketModel, strategy: &Strategy) -> Result<BMaximality> {
    let bound = default_box(model, strategy)?;
    maximality_in_b_with_box(model, strategy, &bound)
}

pub fn maximality_in_b_with_box(
    model: &MarketModel,
    strategy: &Strategy,
    bound: &Rational,
) -> Result<BMaximality> {
    let report = is_admissible(model, strategy);
    if !report.admissible {
        return Err(Error::Inadmissible(format!("{:?}", report.violation)));
    }
    let tree = model.tree();
    let s1 = stochastic_integral(model, strategy)?;
    let aux_prices: Vec<Vec<Rational>> = (0..tree.len())
        .map(|v| {
            std::iter::once(s1.values[v].clone())
                .chain(model.price(v).iter().cloned())
                .collect()
        })
        .collect();
    let n_aux = model.n_assets() + 1;

    // deviation from holding one unit of S¹: D = (H¹ - 1, H²)
    let layout = HoldingLayout::new(tree, n_aux, 0);
    let mut lp = LinearProgram::new(layout.len());
    layout.apply_short_sale_bounds(&mut lp, model.shortable_count() + 1);
    let alpha = lp.add_variable(VarBound::NonNegative);
    let beta = lp.add_variable(VarBound::NonNegative);
    layout.add_box(&mut lp, bound);
    lp.add_sparse(&[(alpha, one())], Relation::Le, bound.clone());
    lp.add_sparse(&[(beta, one())], Relation::Le, bound.clone());
    let forms = layout.gains_forms(tree, &aux_prices);
    for &v in tree.preorder() {
        if tree.parent(v).is_none() {
            continue;
        }
        let mut floor = forms[v].clone();
        floor.push((beta, one()));
        if !s1.values[v].is_zero() {
            floor.push((alpha, s1.values[v].clone()));
        }
        lp.add_sparse(&floor, Relation::Ge, zero());
        if tree.is_leaf(v) {
            lp.add_sparse(&forms[v], Relation::Ge, zero());
        }
    }
    lp.maximize(sum_forms(
        tree.leaves().iter().map(|&l| &forms[l]),
        lp.num_vars(),
    ));
    let out = lp::solve(&lp)?;
    if out.status != LpStatus::Optimal {
        return Err(Error::Internal(format!(
            "B-domination LP returned {:?}",
            out.status
        )));
    }
    if !out
        .objective_value
        .as_ref()
        .is_some_and(|v| v.is_positive())
    {
        return Ok(BMaximality {
            maximal: true,
            box_bound: bound.clone(),
            dominating: None,
        });
    }
    let mut dominating = layout.decode(tree, &out.primal.expect("optimal"));
    for h in dominating.holdings.iter_mut().flatten() {
        h[0] += one();
    }
    Ok(BMaximality {
        maximal: false,
        box_bound: bound.clone(),
        dominating: Some(dominating),
    })
}

/// Condition (i): the auxiliary market is arbitrage-free and the payoff is
/// maximal in B.
pub fn condition_i(model: &MarketModel, strategy: &Strategy) -> Result<bool> {
    let aux = auxiliary_market(model, strategy)?;
    if esmm_feasibility(&aux)?.is_none() {
        return Ok(false);
    }
    Ok(maximality_in_b(model, strategy)?.maximal)
}
