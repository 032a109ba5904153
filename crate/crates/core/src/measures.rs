//! Candidate pricing measures on an event tree, conditional expectations and
//! (super)martingale verdicts.
//!
//! A measure is stored by its terminal weights so that boundary measures,
//! which put zero mass on some paths, are representable. On a finite tree
//! every local martingale is a martingale, so the ELMM class below is simply
//! the class of equivalent martingale measures.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Solution};
use crate::lp::{LinearProgram, Relation};
use crate::market::{Claim, EventTree, MarketModel, NodeId};
use crate::rational::{one, zero, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct Measure {
    /// Probability of each terminal node, by position in
    /// [`EventTree::leaves`].
    pub weights: Vec<Rational>,
}

impl Measure {
    pub fn new(tree: &EventTree, weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != tree.leaf_count() {
            return Err(Error::DimensionMismatch {
                expected: tree.leaf_count(),
                found: weights.len(),
            });
        }
        if let Some(k) = weights.iter().position(|w| w.is_negative()) {
            return Err(Error::Structure(format!(
                "negative weight at terminal position {k}"
            )));
        }
        let total: Rational = weights.iter().sum();
        if total != one() {
            return Err(Error::Structure(format!("measure weights sum to {total}")));
        }
        Ok(Self { weights })
    }

    /// The reference measure P.
    pub fn reference(tree: &EventTree) -> Self {
        Self {
            weights: tree
                .leaves()
                .iter()
                .map(|&l| tree.reference_mass(l))
                .collect(),
        }
    }

    /// Builds the measure whose conditional probability of moving from a
    /// node's parent to the node is `branch(node)`.
    pub fn from_branch_weights(
        tree: &EventTree,
        branch: impl Fn(NodeId) -> Rational,
    ) -> Result<Self> {
        let weights = tree
            .leaves()
            .iter()
            .map(|&l| {
                tree.path_from_root(l)
                    .iter()
                    .skip(1)
                    .map(|&v| branch(v))
                    .product()
            })
            .collect();
        Self::new(tree, weights)
    }

    /// Equivalent to the reference measure, i.e. every terminal weight is
    /// strictly positive.
    pub fn is_equivalent(&self) -> bool {
        self.weights.iter().all(|w| w.is_positive())
    }

    pub fn mass(&self, tree: &EventTree, n: NodeId) -> Rational {
        self.weights[tree.leaf_span(n)].iter().sum()
    }

    pub fn expectation(&self, claim: &Claim) -> Rational {
        self.weights
            .iter()
            .zip(&claim.payoff)
            .map(|(q, f)| q * f)
            .sum()
    }
}

/// `E^Q[f | node]`: the mass-weighted average of `f` over the terminal
/// nodes below `node`.
pub fn conditional_expectation(
    tree: &EventTree,
    measure: &Measure,
    terminal_values: &Claim,
    node: NodeId,
) -> Result<Rational> {
    terminal_values.check_len(tree)?;
    let span = tree.leaf_span(node);
    let mass: Rational = measure.weights[span.clone()].iter().sum();
    if mass.is_zero() {
        return Err(Error::UndefinedConditional(node));
    }
    let total: Rational = measure.weights[span.clone()]
        .iter()
        .zip(&terminal_values.payoff[span])
        .map(|(q, f)| q * f)
        .sum();
    Ok(total / mass)
}

/// `E^Q[X_child | node] - X_node` for a process given per node, or `None`
/// when `node` is terminal or carries no mass.
pub fn drift(
    tree: &EventTree,
    measure: &Measure,
    process: &[Rational],
    node: NodeId,
) -> Option<Rational> {
    if tree.is_leaf(node) {
        return None;
    }
    let mass = measure.mass(tree, node);
    if mass.is_zero() {
        return None;
    }
    let weighted: Rational = tree
        .children(node)
        .iter()
        .map(|&c| measure.mass(tree, c) * (&process[c] - &process[node]))
        .sum();
    Some(weighted / mass)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trend {
    Martingale,
    Supermartingale,
    Neither,
}

/// Classifies a per-node process by its drift at every positive-mass
/// internal node.
pub fn process_trend(tree: &EventTree, measure: &Measure, process: &[Rational]) -> Trend {
    let mut trend = Trend::Martingale;
    for v in tree.internal_nodes() {
        match drift(tree, measure, process, v) {
            Some(dr) if dr.is_positive() => return Trend::Neither,
            Some(dr) if dr.is_negative() => trend = Trend::Supermartingale,
            _ => {}
        }
    }
    trend
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureClass {
    /// Equivalent, and every asset is a martingale.
    Elmm,
    /// Equivalent, shortable assets are martingales and the others
    /// supermartingales.
    Esmm,
    /// The supermartingale conditions hold but some path has zero mass.
    AbsolutelyContinuousSupermartingale,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasureVerdict {
    pub per_asset: Vec<Trend>,
    pub equivalent: bool,
    /// `None` when the (super)martingale conditions fail.
    pub class: Option<MeasureClass>,
}

impl MeasureVerdict {
    pub fn is_esmm(&self) -> bool {
        matches!(self.class, Some(MeasureClass::Elmm | MeasureClass::Esmm))
    }
}

pub fn classify_measure(model: &MarketModel, measure: &Measure) -> Result<MeasureVerdict> {
    let tree = model.tree();
    if measure.weights.len() != tree.leaf_count() {
        return Err(Error::DimensionMismatch {
            expected: tree.leaf_count(),
            found: measure.weights.len(),
        });
    }
    let per_asset: Vec<Trend> = (0..model.n_assets())
        .map(|i| {
            let series: Vec<Rational> = model.prices().iter().map(|p| p[i].clone()).collect();
            process_trend(tree, measure, &series)
        })
        .collect();
    let equivalent = measure.is_equivalent();
    let constraints_hold = per_asset.iter().enumerate().all(|(i, t)| match t {
        Trend::Martingale => true,
        Trend::Supermartingale => !model.is_shortable(i),
        Trend::Neither => false,
    });
    let class = match (constraints_hold, equivalent) {
        (false, _) => None,
        (true, false) => Some(MeasureClass::AbsolutelyContinuousSupermartingale),
        (true, true) if per_asset.iter().all(|t| *t == Trend::Martingale) => {
            Some(MeasureClass::Elmm)
        }
        (true, true) => Some(MeasureClass::Esmm),
    };
    Ok(MeasureVerdict {
        per_asset,
        equivalent,
        class,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolytopeKind {
    /// Shortable assets martingales, the others supermartingales.
    Supermartingale,
    /// Every asset a martingale.
    Martingale,
}

/// The closed polytope of absolutely continuous measures of the given kind,
/// as LP constraints over the terminal weights (objective left zero).
///
/// For each internal node and asset the row is
/// `sum_children mass(child) * (S_child - S_node)`, which is zero (or
/// nonpositive) exactly when the conditional condition holds or the node
/// carries no mass.
pub fn measure_polytope(model: &MarketModel, kind: PolytopeKind) -> LinearProgram {
    let tree = model.tree();
    let mut lp = LinearProgram::new(tree.leaf_count());
    for v in tree.internal_nodes() {
        for i in 0..model.n_assets() {
            let mut terms = Vec::new();
            for &c in tree.children(v) {
                let delta = &model.price(c)[i] - &model.price(v)[i];
                if delta.is_zero() {
                    continue;
                }
                terms.extend(tree.leaf_span(c).map(|k| (k, delta.clone())));
            }
            if terms.is_empty() {
                continue;
            }
            let rel = if kind == PolytopeKind::Martingale || model.is_shortable(i) {
                Relation::Eq
            } else {
                Relation::Le
            };
            lp.add_sparse(&terms, rel, zero());
        }
    }
    lp.add_constraint(vec![one(); tree.leaf_count()], Relation::Eq, one());
    lp
}

/// One-step version of [`measure_polytope`] at internal node `v`: the
/// conditional probabilities of moving to each child.
pub fn local_polytope(model: &MarketModel, v: NodeId, kind: PolytopeKind) -> LinearProgram {
    let tree = model.tree();
    let kids = tree.children(v);
    let mut lp = LinearProgram::new(kids.len());
    for i in 0..model.n_assets() {
        let row: Vec<Rational> = kids
            .iter()
            .map(|&c| &model.price(c)[i] - &model.price(v)[i])
            .collect();
        if row.iter().all(Zero::is_zero) {
            continue;
        }
        let rel = if kind == PolytopeKind::Martingale || model.is_shortable(i) {
            Relation::Eq
        } else {
            Relation::Le
        };
        lp.add_constraint(row, rel, zero());
    }
    lp.add_constraint(vec![one(); kids.len()], Relation::Eq, one());
    lp
}

/// Measure whose one-step conditional at each internal node `v` is
/// `conditionals[v]` (one entry per child; ignored at leaves).
pub fn compose_conditionals(tree: &EventTree, conditionals: &[Vec<Rational>]) -> Measure {
    let mut mass = vec![zero(); tree.len()];
    mass[tree.root()] = one();
    for &v in tree.preorder() {
        if tree.is_leaf(v) {
            continue;
        }
        for (&c, p) in tree.children(v).iter().zip(&conditionals[v]) {
            mass[c] = &mass[v] * p;
        }
    }
    Measure {
        weights: tree.leaves().iter().map(|&l| mass[l].clone()).collect(),
    }
}

/// Vertices of the closed martingale-measure polytope.
///
/// The polytope factors over the tree: a measure is a vertex exactly when its
/// one-step conditional at every positive-mass node is a vertex of that
/// node's local polytope, so vertices are assembled from local vertices
/// (found by exact support enumeration) in a depth-first product. Fails if
/// more than `limit` vertices would be produced.
pub fn martingale_polytope_vertices(model: &MarketModel, limit: usize) -> Result<Vec<Measure>> {
    let tree = model.tree();
    let mut conditionals: Vec<Option<Vec<Vec<Rational>>>> = vec![None; tree.len()];
    for &v in tree.preorder().iter().rev() {
        let span = tree.leaf_span(v);
        if tree.is_leaf(v) {
            conditionals[v] = Some(vec![vec![one()]]);
            continue;
        }
        let mut out: Vec<Vec<Rational>> = Vec::new();
        for local in local_martingale_vertices(model, v) {
            let mut partial: Vec<Vec<Rational>> = vec![Vec::with_capacity(span.len())];
            for (&c, p) in tree.children(v).iter().zip(&local) {
                let width = tree.leaf_span(c).len();
                if p.is_zero() {
                    for acc in &mut partial {
                        acc.extend(std::iter::repeat_n(zero(), width));
                    }
                    continue;
                }
                let child = conditionals[c].as_ref().expect("children processed first");
                let mut next = Vec::with_capacity(partial.len() * child.len());
                for acc in &partial {
                    for cond in child {
                        let mut a = acc.clone();
                        a.extend(cond.iter().map(|w| w * p));
                        next.push(a);
                    }
                }
                if next.len() > limit {
                    return Err(Error::Domain(format!(
                        "more than {limit} polytope vertices"
                    )));
                }
                partial = next;
            }
            out.extend(partial);
            if out.len() > limit {
                return Err(Error::Domain(format!(
                    "more than {limit} polytope vertices"
                )));
            }
        }
        // drop what the subtrees below no longer need
        for &c in tree.children(v) {
            conditionals[c] = None;
        }
        conditionals[v] = Some(out);
    }
    let root = conditionals[tree.root()].take().unwrap_or_default();
    Ok(root
        .into_iter()
        .map(|weights| Measure { weights })
        .collect())
}

/// Vertices of `{p >= 0, sum p = 1, sum_c p_c (S_c - S_v) = 0}` at node `v`,
/// one entry per child.
fn local_martingale_vertices(model: &MarketModel, v: NodeId) -> Vec<Vec<Rational>> {
    let tree = model.tree();
    let kids = tree.children(v);
    let k = kids.len();
    assert!(
        k < usize::BITS as usize,
        "too many children for support enumeration"
    );
    let mut rows: Vec<Vec<Rational>> = vec![vec![one(); k]];
    for i in 0..model.n_assets() {
        rows.push(
            kids.iter()
                .map(|&c| &model.price(c)[i] - &model.price(v)[i])
                .collect(),
        );
    }
    let mut rhs = vec![zero(); rows.len()];
    rhs[0] = one();
    let mut vertices = Vec::new();
    for support in 1u64..(1u64 << k) {
        let cols: Vec<usize> = (0..k).filter(|j| support >> j & 1 == 1).collect();
        let sub: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| cols.iter().map(|&j| r[j].clone()).collect())
            .collect();
        if let Solution::Unique(x) = linalg::solve(&sub, &rhs) {
            if x.iter().all(|w| w.is_positive()) {
                let mut p = vec![zero(); k];
                for (&j, w) in cols.iter().zip(x) {
                    p[j] = w;
                }
                vertices.push(p);
            }
        }
    }
    vertices
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{binomial_1, one_period};
    use crate::lp;
    use crate::market::TreeBuilder;
    use crate::rational::{int, ratio};

    fn two_leaf() -> EventTree {
        let mut b = TreeBuilder::new();
        b.child(0, ratio(1, 2));
        b.child(0, ratio(1, 2));
        b.build().unwrap()
    }

    #[test]
    fn conditional_expectation_basics() {
        let t = two_leaf();
        let q = Measure::new(&t, vec![ratio(1, 3), ratio(2, 3)]).unwrap();
        let f = Claim::new(&t, vec![int(3), int(0)]).unwrap();
        assert_eq!(conditional_expectation(&t, &q, &f, 0).unwrap(), int(1));
        assert_eq!(
            conditional_expectation(&t, &q, &f, 0).unwrap(),
            q.expectation(&f)
        );
        let c = Claim::constant(&t, ratio(7, 3));
        for v in 0..t.len() {
            assert_eq!(conditional_expectation(&t, &q, &c, v).unwrap(), ratio(7, 3));
        }
        let boundary = Measure::new(&t, vec![int(0), int(1)]).unwrap();
        assert!(matches!(
            conditional_expectation(&t, &boundary, &f, 1),
            Err(Error::UndefinedConditional(1))
        ));
    }

    #[test]
    fn measure_validation() {
        let t = two_leaf();
        assert!(Measure::new(&t, vec![ratio(1, 2), ratio(1, 3)]).is_err());
        assert!(Measure::new(&t, vec![int(2), int(-1)]).is_err());
        assert!(Measure::new(&t, vec![int(1)]).is_err());
    }

    #[test]
    fn reference_measure_on_martingale_prices_is_elmm() {
        let m = one_period(&[int(1), int(2), int(0)], 1);
        let v = classify_measure(&m, &Measure::reference(m.tree())).unwrap();
        assert_eq!(v.class, Some(MeasureClass::Elmm));
    }

    #[test]
    fn binomial_quarter_is_strict_supermartingale() {
        let m = binomial_1();
        let q = Measure::new(m.tree(), vec![ratio(1, 4), ratio(3, 4)]).unwrap();
        // 2 * 1/4 + 1/2 * 3/4 = 7/8 < 1
        let f = Claim::from_fn(m.tree(), |l| m.price(l)[0].clone());
        assert_eq!(q.expectation(&f), ratio(7, 8));
        let v = classify_measure(&m, &q).unwrap();
        assert_eq!(v.per_asset, vec![Trend::Supermartingale]);
        assert_eq!(v.class, Some(MeasureClass::Esmm));
        // the same measure fails once the asset becomes shortable
        let v = classify_measure(&m.with_shortable_count(1).unwrap(), &q).unwrap();
        assert_eq!(v.class, None);
    }

    #[test]
    fn binomial_third_is_martingale() {
        let m = binomial_1();
        let q = Measure::new(m.tree(), vec![ratio(1, 3), ratio(2, 3)]).unwrap();
        let v = classify_measure(&m, &q).unwrap();
        assert_eq!(v.per_asset, vec![Trend::Martingale]);
        assert_eq!(v.class, Some(MeasureClass::Elmm));
    }

    #[test]
    fn boundary_measure_is_absolutely_continuous_only() {
        let m = binomial_1();
        let q = Measure::new(m.tree(), vec![int(0), int(1)]).unwrap();
        let v = classify_measure(&m, &q).unwrap();
        assert_eq!(
            v.class,
            Some(MeasureClass::AbsolutelyContinuousSupermartingale)
        );
    }

    #[test]
    fn tower_property_on_binomial() {
        let m = MarketModel::binomial(int(1), int(2), ratio(1, 2), 3, 0).unwrap();
        let t = m.tree();
        let q =
            Measure::from_branch_weights(t, |v| if v % 2 == 1 { ratio(1, 5) } else { ratio(4, 5) })
                .unwrap();
        let f = Claim::from_fn(t, |l| &m.price(l)[0] * &m.price(l)[0]);
        for v in t.internal_nodes() {
            let here = conditional_expectation(t, &q, &f, v).unwrap();
            let mass = q.mass(t, v);
            let kids: Rational = t
                .children(v)
                .iter()
                .map(|&c| q.mass(t, c) * conditional_expectation(t, &q, &f, c).unwrap())
                .sum();
            assert_eq!(here, kids / mass);
        }
    }

    #[test]
    fn polytope_rows_match_classification() {
        let m = binomial_1();
        let lp = measure_polytope(&m, PolytopeKind::Supermartingale);
        for (k, expect) in [
            (ratio(1, 4), true),
            (ratio(1, 3), true),
            (ratio(1, 2), false),
        ] {
            let x = vec![k.clone(), int(1) - &k];
            assert_eq!(lp.is_feasible(&x), expect);
        }
        let lp = measure_polytope(&m, PolytopeKind::Martingale);
        assert!(lp.is_feasible(&[ratio(1, 3), ratio(2, 3)]));
        assert!(!lp.is_feasible(&[ratio(1, 4), ratio(3, 4)]));
    }

    #[test]
    fn vertex_enumeration_matches_lp_extremes() {
        // trinomial two-period tree: the martingale polytope has a segment of
        // local vertices at each node
        let mut b = TreeBuilder::new();
        let mut prices = vec![vec![int(4)]];
        let mut frontier = vec![0usize];
        for _ in 0..2 {
            let mut next = vec![];
            for &v in &frontier {
                let s = prices[v][0].clone();
                for f in [int(2), int(1), ratio(1, 2)] {
                    next.push(b.child(v, ratio(1, 3)));
                    prices.push(vec![&s * f]);
                }
            }
            frontier = next;
        }
        let m = MarketModel::new(b.build().unwrap(), prices, 1).unwrap();
        let verts = martingale_polytope_vertices(&m, 10_000).unwrap();
        let poly = measure_polytope(&m, PolytopeKind::Martingale);
        for q in &verts {
            assert!(poly.is_feasible(&q.weights));
        }
        // linear objectives attain their LP max at some enumerated vertex
        for seed in 0..5i64 {
            let obj: Vec<Rational> = (0..m.tree().leaf_count() as i64)
                .map(|k| int((k * 7 + seed * 3) % 5))
                .collect();
            let mut lp = poly.clone();
            lp.maximize(obj.clone());
            let best = lp::solve(&lp).unwrap().objective_value.unwrap();
            let vmax = verts
                .iter()
                .map(|q| {
                    q.weights
                        .iter()
                        .zip(&obj)
                        .map(|(a, b)| a * b)
                        .sum::<Rational>()
                })
                .max()
                .unwrap();
            assert_eq!(best, vmax);
        }
    }
}
