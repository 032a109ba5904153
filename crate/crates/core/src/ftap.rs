//! No-arbitrage decision: equivalent supermartingale measure on one side,
//! an explicit arbitrage strategy on the other.
//!
//! On a finite tree the set of super-hedgeable payoffs is a closed
//! polyhedral cone, so NFLVR and NA coincide and the check below decides
//! both.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::layout::{sum_forms, HoldingLayout};
use crate::lp::{self, LinearProgram, LpStatus, Relation};
use crate::market::{stochastic_integral, Claim, MarketModel, Strategy};
use crate::measures::{
    compose_conditionals, local_polytope, measure_polytope, Measure, PolytopeKind,
};
use crate::rational::{one, zero};

/// A strictly positive measure under which shortable assets are
/// martingales and the others supermartingales, if one exists.
///
/// The measure set factors over the tree, so an equivalent measure exists
/// iff every internal node admits a strictly positive one-step conditional;
/// those conditionals compose into the returned measure.
pub fn esmm_feasibility(model: &MarketModel) -> Result<Option<Measure>> {
    local_feasibility(model, PolytopeKind::Supermartingale)
}

/// Same as [`esmm_feasibility`] with every asset a martingale.
pub fn elmm_feasibility(model: &MarketModel) -> Result<Option<Measure>> {
    local_feasibility(model, PolytopeKind::Martingale)
}

fn local_feasibility(model: &MarketModel, kind: PolytopeKind) -> Result<Option<Measure>> {
    let tree = model.tree();
    let mut conditionals = vec![Vec::new(); tree.len()];
    for v in tree.internal_nodes() {
        let local = local_polytope(model, v, kind);
        let strict: Vec<usize> = (0..local.num_vars()).collect();
        match lp::strict_interior_point(&local, &strict)? {
            Some(p) => conditionals[v] = p,
            None => return Ok(None),
        }
    }
    Ok(Some(compose_conditionals(tree, &conditionals)))
}

/// [`esmm_feasibility`] decided by one LP over the whole tree; used to
/// cross-check the node-by-node version.
pub fn esmm_feasibility_lp(model: &MarketModel, kind: PolytopeKind) -> Result<Option<Measure>> {
    let poly = measure_polytope(model, kind);
    let strict: Vec<usize> = (0..model.tree().leaf_count()).collect();
    Ok(lp::strict_interior_point(&poly, &strict)?.map(|weights| Measure { weights }))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Arbitrage {
    pub strategy: Strategy,
    /// `(H·S)_T`: nonnegative everywhere, positive somewhere.
    pub payoff: Claim,
}

/// An admissible zero-cost strategy whose terminal gains are nonnegative and
/// not identically zero, or `None` when the market is arbitrage-free.
///
/// Solves `max sum_leaves (H·S)_T` subject to `(H·S)_T >= 0` at every leaf,
/// no short positions in non-shortable assets, and `|H| <= 1`.
pub fn find_arbitrage(model: &MarketModel) -> Result<Option<Arbitrage>> {
    let tree = model.tree();
    let layout = HoldingLayout::new(tree, model.n_assets(), 0);
    let mut lp = LinearProgram::new(layout.len());
    layout.apply_short_sale_bounds(&mut lp, model.shortable_count());
    layout.add_box(&mut lp, &one());
    let forms = layout.gains_forms(tree, model.prices());
    for &l in tree.leaves() {
        lp.add_sparse(&forms[l], Relation::Ge, zero());
    }
    let objective = sum_forms(tree.leaves().iter().map(|&l| &forms[l]), lp.num_vars());
    lp.maximize(objective);
    let out = lp::solve(&lp)?;
    if out.status != LpStatus::Optimal {
        return Err(Error::Internal(format!(
            "bounded arbitrage LP returned {:?}",
            out.status
        )));
    }
    if !out
        .objective_value
        .as_ref()
        .is_some_and(|v| v.is_positive())
    {
        return Ok(None);
    }
    let strategy = layout.decode(tree, out.primal.as_ref().expect("optimal"));
    let payoff = stochastic_integral(model, &strategy)?.terminal(tree);
    Ok(Some(Arbitrage { strategy, payoff }))
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    NoArbitrage(Measure),
    Arbitrage(Arbitrage),
}

/// Runs both sides and insists that exactly one of them succeeds.
pub fn check(model: &MarketModel) -> Result<Verdict> {
    match (esmm_feasibility(model)?, find_arbitrage(model)?) {
        (Some(q), None) => Ok(Verdict::NoArbitrage(q)),
        (None, Some(a)) => Ok(Verdict::Arbitrage(a)),
        (Some(_), Some(_)) => Err(Error::Internal(
            "both a measure and an arbitrage found".into(),
        )),
        (None, None) => Err(Error::Internal(
            "neither a measure nor an arbitrage found".into(),
        )),
    }
}
