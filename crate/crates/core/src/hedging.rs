//! Super-replication: the price as a maximum over the measure polytope, the
//! cheapest hedge with consumption as the dual LP, the per-node price
//! process, and the test for whether the supremum is reached by an
//! equivalent measure.
//!
//! The measure polytope is a product of one-step polytopes, one per
//! internal node, so everything is computed by a backward pass of small
//! one-step LPs: the node value is the one-step maximum of the children's
//! values, the hedge at the node is the one-step dual, and the supremum is
//! attained by an equivalent measure iff every one-step optimal face has a
//! strictly positive point (an equivalent maximizer charges every node, so
//! its conditionals must be optimal everywhere). The `_lp` variants solve
//! the same problems as one LP over the whole tree and serve as a
//! cross-check.
//!
//! The supremum over equivalent supermartingale measures equals the maximum
//! over the closed polytope of absolutely continuous ones (the objective is
//! linear and strictly positive points are dense once one exists), so the
//! price is always finite here. Whether that maximum is reached by a
//! strictly positive measure is decided separately by asking for a strictly
//! positive point on the optimal face.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::ftap::esmm_feasibility;
use crate::layout::HoldingLayout;
use crate::lp::{self, LinearProgram, LpStatus, Relation, VarBound};
use crate::market::{
    stochastic_integral, Claim, EventTree, MarketModel, NodeId, Strategy, ValueProcess,
};
use crate::measures::{
    compose_conditionals, local_polytope, measure_polytope, process_trend, Measure, PolytopeKind,
    Trend,
};
use crate::rational::{dot, one, zero, Rational};

/// Cumulative consumption: zero at the root and nondecreasing along every
/// path.
#[derive(Debug, Clone, PartialEq)]
pub struct ConsumptionProcess {
    pub cumulative: Vec<Rational>,
}

impl ConsumptionProcess {
    pub fn is_zero(&self) -> bool {
        self.cumulative.iter().all(Zero::is_zero)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HedgePrice {
    pub value: Rational,
    pub attained_by_equivalent: bool,
    /// A strictly positive maximizer when the supremum is attained by an
    /// equivalent measure, otherwise the optimal vertex.
    pub witness_measure: Measure,
    /// The optimal vertex found by the simplex.
    pub optimal_vertex: Measure,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Superhedge {
    pub x: Rational,
    pub strategy: Strategy,
    pub consumption: ConsumptionProcess,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Attainability {
    pub attainable: bool,
    pub price: Rational,
    /// `R*`: strictly positive measure attaining the price.
    pub equivalent_optimum: Option<Measure>,
    /// Optimal vertex; the only evidence when not attainable.
    pub boundary_optimum: Measure,
    /// Hedge with zero consumption whose gains are an `R*`-martingale.
    pub hedge: Option<Superhedge>,
}

fn require_esmm(model: &MarketModel) -> Result<Measure> {
    esmm_feasibility(model)?.ok_or(Error::NoEquivalentMeasure)
}

fn require_nonnegative(model: &MarketModel, claim: &Claim) -> Result<()> {
    let tree = model.tree();
    claim.check_len(tree)?;
    if let Some(k) = claim.payoff.iter().position(|f| f.is_negative()) {
        return Err(Error::NegativePayoff {
            node: tree.leaves()[k],
            value: claim.payoff[k].to_string(),
        });
    }
    Ok(())
}

/// Shift making a claim bounded below nonnegative: `max(0, -min f)`.
pub fn nonnegative_shift(claim: &Claim) -> Rational {
    std::cmp::max(zero(), -claim.min())
}

struct Backward {
    values: Vec<Rational>,
    vertex: Vec<Vec<Rational>>,
    interior: Vec<Option<Vec<Rational>>>,
    holdings: Vec<Option<Vec<Rational>>>,
}

fn backward(model: &MarketModel, claim: &Claim, with_hedge: bool) -> Result<Backward> {
    let tree = model.tree();
    let mut b = Backward {
        values: vec![zero(); tree.len()],
        vertex: vec![Vec::new(); tree.len()],
        interior: vec![None; tree.len()],
        holdings: vec![None; tree.len()],
    };
    for (k, &l) in tree.leaves().iter().enumerate() {
        b.values[l] = claim.payoff[k].clone();
    }
    for &v in tree.preorder().iter().rev() {
        if tree.is_leaf(v) {
            continue;
        }
        let kids = tree.children(v);
        let next: Vec<Rational> = kids.iter().map(|&c| b.values[c].clone()).collect();
        let mut local = local_polytope(model, v, PolytopeKind::Supermartingale);
        local.maximize(next.clone());
        let out = lp::solve(&local)?;
        if out.status != LpStatus::Optimal {
            return Err(Error::Internal(format!(
                "one-step LP at node {v} returned {:?}",
                out.status
            )));
        }
        let value = out.objective_value.expect("optimal");
        local.add_constraint(next.clone(), Relation::Eq, value.clone());
        let strict: Vec<usize> = (0..kids.len()).collect();
        b.interior[v] = lp::strict_interior_point(&local, &strict)?;
        b.vertex[v] = out.primal.expect("optimal");
        if with_hedge {
            let (x, h) = one_step_hedge(model, v, &next)?;
            if x != value {
                return Err(Error::Internal(format!("one-step duality gap at node {v}")));
            }
            b.holdings[v] = Some(h);
        }
        b.values[v] = value;
    }
    Ok(b)
}

/// `min x` subject to `x + H·(S_c - S_v) >= next_c` for every child `c`.
fn one_step_hedge(
    model: &MarketModel,
    v: NodeId,
    next: &[Rational],
) -> Result<(Rational, Vec<Rational>)> {
    let n = model.n_assets();
    let mut lp = LinearProgram::new(n + 1);
    lp.set_free(0);
    for i in 0..model.shortable_count() {
        lp.set_free(1 + i);
    }
    for (&c, target) in model.tree().children(v).iter().zip(next) {
        let mut row = vec![one()];
        row.extend((0..n).map(|i| &model.price(c)[i] - &model.price(v)[i]));
        lp.add_constraint(row, Relation::Ge, target.clone());
    }
    let mut objective = vec![zero(); n + 1];
    objective[0] = one();
    lp.minimize(objective);
    let out = lp::solve(&lp)?;
    if out.status != LpStatus::Optimal {
        return Err(Error::Internal(format!(
            "one-step hedge at node {v} returned {:?}",
            out.status
        )));
    }
    let mut sol = out.primal.expect("optimal");
    let h = sol.split_off(1);
    Ok((sol.pop().expect("x"), h))
}

fn price_from_backward(tree: &EventTree, b: Backward) -> HedgePrice {
    let attained = tree.internal_nodes().all(|v| b.interior[v].is_some());
    let optimal_vertex = compose_conditionals(tree, &b.vertex);
    let witness: Vec<Vec<Rational>> = b
        .interior
        .into_iter()
        .zip(b.vertex)
        .map(|(inner, vertex)| inner.unwrap_or(vertex))
        .collect();
    HedgePrice {
        value: b.values[tree.root()].clone(),
        attained_by_equivalent: attained,
        witness_measure: compose_conditionals(tree, &witness),
        optimal_vertex,
    }
}

/// `sup_Q E^Q[f]` over equivalent supermartingale measures for a
/// nonnegative claim.
pub fn superreplication_price(model: &MarketModel, claim: &Claim) -> Result<HedgePrice> {
    require_esmm(model)?;
    require_nonnegative(model, claim)?;
    Ok(price_from_backward(
        model.tree(),
        backward(model, claim, false)?,
    ))
}

/// [`superreplication_price`] as a single LP over the closed measure
/// polytope, with attainment decided on the global optimal face.
pub fn superreplication_price_lp(model: &MarketModel, claim: &Claim) -> Result<HedgePrice> {
    require_esmm(model)?;
    require_nonnegative(model, claim)?;
    let mut poly = measure_polytope(model, PolytopeKind::Supermartingale);
    poly.maximize(claim.payoff.clone());
    let out = lp::solve(&poly)?;
    if out.status != LpStatus::Optimal {
        return Err(Error::Internal(format!(
            "measure LP returned {:?}",
            out.status
        )));
    }
    let value = out.objective_value.expect("optimal");
    let optimal_vertex = Measure {
        weights: out.primal.expect("optimal"),
    };

    let mut face = poly;
    face.add_constraint(claim.payoff.clone(), Relation::Eq, value.clone());
    let strict: Vec<usize> = (0..model.tree().leaf_count()).collect();
    let interior = lp::strict_interior_point(&face, &strict)?;
    Ok(HedgePrice {
        value,
        attained_by_equivalent: interior.is_some(),
        witness_measure: interior
            .map(|weights| Measure { weights })
            .unwrap_or_else(|| optimal_vertex.clone()),
        optimal_vertex,
    })
}

/// Prices a claim that may be negative by pricing `f + a` with
/// `a = max(0, -min f)` and subtracting `a` again.
pub fn superreplication_price_shifted(model: &MarketModel, claim: &Claim) -> Result<HedgePrice> {
    let a = nonnegative_shift(claim);
    let mut price = superreplication_price(model, &claim.shifted(&a))?;
    price.value -= a;
    Ok(price)
}

/// Cheapest initial capital `x` with an admissible `H` and nondecreasing
/// consumption `C` (from `C_0 = 0`) such that `x + (H·S) - C` stays
/// nonnegative and equals the claim at maturity.
///
/// Wealth follows the price process; at each node the one-step hedge covers
/// every child's value and the excess is consumed on arrival.
pub fn superhedge(model: &MarketModel, claim: &Claim) -> Result<Superhedge> {
    require_esmm(model)?;
    require_nonnegative(model, claim)?;
    let tree = model.tree();
    let b = backward(model, claim, true)?;
    let mut cumulative = vec![zero(); tree.len()];
    for &v in tree.preorder() {
        if let Some(p) = tree.parent(v) {
            let h = b.holdings[p].as_ref().expect("internal node");
            let carried = &b.values[p] + dot(h, &model.increment(v));
            cumulative[v] = &cumulative[p] + carried - &b.values[v];
        }
    }
    let strategy = Strategy {
        holdings: b.holdings,
        admissibility_bound: None,
    };
    let hedge = Superhedge {
        x: b.values[tree.root()].clone(),
        strategy,
        consumption: ConsumptionProcess { cumulative },
    };
    verify_superhedge(model, claim, &hedge)?;
    Ok(hedge)
}

/// [`superhedge`] as a single LP over the whole tree.
pub fn superhedge_lp(model: &MarketModel, claim: &Claim) -> Result<Superhedge> {
    require_esmm(model)?;
    require_nonnegative(model, claim)?;
    let tree = model.tree();
    let layout = HoldingLayout::new(tree, model.n_assets(), 1);
    // consumption increment variable for every non-root node
    let mut c_var = vec![None; tree.len()];
    let mut next = layout.end();
    for &v in tree.preorder() {
        if tree.parent(v).is_some() {
            c_var[v] = Some(next);
            next += 1;
        }
    }
    let mut lp = LinearProgram::new(next);
    lp.bounds[0] = VarBound::Free;
    layout.apply_short_sale_bounds(&mut lp, model.shortable_count());
    let gains = layout.gains_forms(tree, model.prices());
    for &v in tree.preorder() {
        let mut wealth = gains[v].clone();
        wealth.push((0, one()));
        for u in tree.path_from_root(v) {
            if let Some(c) = c_var[u] {
                wealth.push((c, -one()));
            }
        }
        match tree.leaf_position(v) {
            Some(k) => lp.add_sparse(&wealth, Relation::Eq, claim.payoff[k].clone()),
            None => lp.add_sparse(&wealth, Relation::Ge, zero()),
        }
    }
    let mut objective = vec![zero(); lp.num_vars()];
    objective[0] = one();
    lp.minimize(objective);
    let out = lp::solve(&lp)?;
    if out.status != LpStatus::Optimal {
        return Err(Error::Internal(format!(
            "hedging LP returned {:?}",
            out.status
        )));
    }
    let sol = out.primal.expect("optimal");
    let x = sol[0].clone();
    let strategy = layout.decode(tree, &sol);
    let mut cumulative = vec![zero(); tree.len()];
    for &v in tree.preorder() {
        if let (Some(p), Some(c)) = (tree.parent(v), c_var[v]) {
            cumulative[v] = &cumulative[p] + &sol[c];
        }
    }
    let hedge = Superhedge {
        x,
        strategy,
        consumption: ConsumptionProcess { cumulative },
    };
    verify_superhedge(model, claim, &hedge)?;
    Ok(hedge)
}

/// Same as [`superhedge`] for a claim bounded below, via the shift used by
/// [`superreplication_price_shifted`].
pub fn superhedge_shifted(model: &MarketModel, claim: &Claim) -> Result<Superhedge> {
    let a = nonnegative_shift(claim);
    let mut hedge = superhedge(model, &claim.shifted(&a))?;
    hedge.x -= a;
    Ok(hedge)
}

/// Node-exact check of `x + (H·S)_T - C_T = f`, monotone consumption from
/// zero and the short-sale constraint.
pub fn verify_superhedge(model: &MarketModel, claim: &Claim, hedge: &Superhedge) -> Result<()> {
    let tree = model.tree();
    let gains = stochastic_integral(model, &hedge.strategy)?;
    let c = &hedge.consumption.cumulative;
    if !c[tree.root()].is_zero() {
        return Err(Error::Internal("consumption does not start at zero".into()));
    }
    for &v in tree.preorder() {
        if let Some(p) = tree.parent(v) {
            if c[v] < c[p] {
                return Err(Error::Internal(format!(
                    "consumption decreases at node {v}"
                )));
            }
        }
    }
    for (k, &l) in tree.leaves().iter().enumerate() {
        if &hedge.x + &gains.values[l] - &c[l] != claim.payoff[k] {
            return Err(Error::Internal(format!(
                "hedge misses the claim at node {l}"
            )));
        }
    }
    for v in tree.internal_nodes() {
        let h = hedge.strategy.holding(v).expect("internal node");
        if h[model.shortable_count()..].iter().any(|x| x.is_negative()) {
            return Err(Error::Internal(format!("hedge sells short at node {v}")));
        }
    }
    Ok(())
}

/// Whether the claim can be replicated by a strategy whose gains are a
/// martingale under some equivalent supermartingale measure, i.e. whether
/// the super-replication supremum is attained by a strictly positive
/// measure.
pub fn is_attainable(model: &MarketModel, claim: &Claim) -> Result<Attainability> {
    let price = superreplication_price(model, claim)?;
    attainability_from_price(model, claim, price, superhedge)
}

/// [`is_attainable`] for claims bounded below, via the nonnegative shift.
pub fn is_attainable_shifted(model: &MarketModel, claim: &Claim) -> Result<Attainability> {
    let price = superreplication_price_shifted(model, claim)?;
    attainability_from_price(model, claim, price, superhedge_shifted)
}

fn attainability_from_price(
    model: &MarketModel,
    claim: &Claim,
    price: HedgePrice,
    hedger: fn(&MarketModel, &Claim) -> Result<Superhedge>,
) -> Result<Attainability> {
    if !price.attained_by_equivalent {
        return Ok(Attainability {
            attainable: false,
            price: price.value,
            equivalent_optimum: None,
            boundary_optimum: price.optimal_vertex,
            hedge: None,
        });
    }
    let r_star = price.witness_measure;
    let hedge = hedger(model, claim)?;
    if hedge.x != price.value {
        return Err(Error::Internal(
            "hedging cost differs from the measure price".into(),
        ));
    }
    if !hedge.consumption.is_zero() {
        return Err(Error::Internal(
            "attainable claim hedged with consumption".into(),
        ));
    }
    let gains = stochastic_integral(model, &hedge.strategy)?;
    if process_trend(model.tree(), &r_star, &gains.values) != Trend::Martingale {
        return Err(Error::Internal(
            "replicating gains are not an R*-martingale".into(),
        ));
    }
    Ok(Attainability {
        attainable: true,
        price: price.value,
        equivalent_optimum: Some(r_star),
        boundary_optimum: price.optimal_vertex,
        hedge: Some(hedge),
    })
}

/// Super-replication value at every node by backward recursion: the claim at
/// the leaves, and at an internal node the largest one-step expectation of
/// the children's values over conditional measures obeying the
/// (super)martingale constraints.
pub fn price_process(model: &MarketModel, claim: &Claim) -> Result<ValueProcess> {
    require_esmm(model)?;
    require_nonnegative(model, claim)?;
    Ok(ValueProcess {
        values: backward(model, claim, false)?.values,
    })
}
