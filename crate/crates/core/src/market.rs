//! Event trees, price processes, predictable strategies and their gains.
//!
//! Holdings live on non-terminal nodes and are the positions carried over the
//! following period, so a strategy never holds anything "before time 0": the
//! initial endowment is always cash.

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::rational::{dot, one, zero, Rational};

pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq)]
pub struct EventTree {
    root: NodeId,
    parent: Vec<Option<NodeId>>,
    weight: Vec<Rational>,
    time: Vec<usize>,
    children: Vec<Vec<NodeId>>,
    preorder: Vec<NodeId>,
    leaves: Vec<NodeId>,
    leaf_pos: Vec<Option<usize>>,
    leaf_range: Vec<(usize, usize)>,
    horizon: usize,
}

impl EventTree {
    /// Builds a tree from parent links and reference branch weights
    /// (conditional probability of reaching the node from its parent). The
    /// root's weight entry is ignored.
    pub fn new(parent: Vec<Option<NodeId>>, weight: Vec<Rational>) -> Result<Self> {
        let n = parent.len();
        if n == 0 {
            return Err(Error::InvalidTree("no nodes".into()));
        }
        if weight.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: weight.len(),
            });
        }
        let roots: Vec<NodeId> = (0..n).filter(|&i| parent[i].is_none()).collect();
        let root = match roots.as_slice() {
            [r] => *r,
            [] => return Err(Error::InvalidTree("no root".into())),
            _ => return Err(Error::InvalidTree(format!("{} roots", roots.len()))),
        };
        let mut children = vec![Vec::new(); n];
        for (i, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                if p >= n {
                    return Err(Error::InvalidTree(format!(
                        "node {i} has unknown parent {p}"
                    )));
                }
                children[p].push(i);
            }
        }

        let mut time = vec![0; n];
        let mut preorder = Vec::with_capacity(n);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            preorder.push(v);
            for &c in children[v].iter().rev() {
                time[c] = time[v] + 1;
                stack.push(c);
            }
        }
        if preorder.len() != n {
            return Err(Error::InvalidTree(
                "nodes unreachable from the root (cycle)".into(),
            ));
        }

        let mut weight = weight;
        weight[root] = one();
        for v in 0..n {
            if children[v].is_empty() {
                continue;
            }
            let mut total = zero();
            for &c in &children[v] {
                if !weight[c].is_positive() {
                    return Err(Error::InvalidTree(format!(
                        "branch weight of node {c} is not strictly positive"
                    )));
                }
                total += &weight[c];
            }
            if !total.is_one() {
                return Err(Error::InvalidTree(format!(
                    "branch weights below node {v} sum to {total}"
                )));
            }
        }

        let leaves: Vec<NodeId> = preorder
            .iter()
            .copied()
            .filter(|&v| children[v].is_empty())
            .collect();
        let horizon = time[leaves[0]];
        if let Some(&bad) = leaves.iter().find(|&&l| time[l] != horizon) {
            return Err(Error::InvalidTree(format!(
                "terminal node {bad} at time {} but horizon is {horizon}",
                time[bad]
            )));
        }
        let mut leaf_pos = vec![None; n];
        for (k, &l) in leaves.iter().enumerate() {
            leaf_pos[l] = Some(k);
        }
        // Preorder makes the leaves under any node contiguous.
        let mut leaf_range = vec![(usize::MAX, 0); n];
        for &v in preorder.iter().rev() {
            if let Some(k) = leaf_pos[v] {
                leaf_range[v] = (k, k + 1);
            } else {
                let lo = children[v].iter().map(|&c| leaf_range[c].0).min().unwrap();
                let hi = children[v].iter().map(|&c| leaf_range[c].1).max().unwrap();
                leaf_range[v] = (lo, hi);
            }
        }

        Ok(Self {
            root,
            parent,
            weight,
            time,
            children,
            preorder,
            leaves,
            leaf_pos,
            leaf_range,
            horizon,
        })
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn parent(&self, n: NodeId) -> Option<NodeId> {
        self.parent[n]
    }

    pub fn children(&self, n: NodeId) -> &[NodeId] {
        &self.children[n]
    }

    pub fn time(&self, n: NodeId) -> usize {
        self.time[n]
    }

    /// Reference conditional probability of moving from the parent to `n`.
    pub fn weight(&self, n: NodeId) -> &Rational {
        &self.weight[n]
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn is_leaf(&self, n: NodeId) -> bool {
        self.children[n].is_empty()
    }

    /// Terminal nodes in preorder. Claims and measures are indexed by
    /// position in this slice.
    pub fn leaves(&self) -> &[NodeId] {
        &self.leaves
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    pub fn leaf_position(&self, n: NodeId) -> Option<usize> {
        self.leaf_pos[n]
    }

    /// Positions (into [`leaves`](Self::leaves)) of the terminal nodes
    /// below `n`.
    pub fn leaf_span(&self, n: NodeId) -> std::ops::Range<usize> {
        let (lo, hi) = self.leaf_range[n];
        lo..hi
    }

    /// Parents before children.
    pub fn preorder(&self) -> &[NodeId] {
        &self.preorder
    }

    pub fn internal_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.preorder.iter().copied().filter(|&v| !self.is_leaf(v))
    }

    pub fn path_from_root(&self, n: NodeId) -> Vec<NodeId> {
        let mut path = vec![n];
        let mut v = n;
        while let Some(p) = self.parent[v] {
            path.push(p);
            v = p;
        }
        path.reverse();
        path
    }

    /// Reference (P) probability of reaching `n`.
    pub fn reference_mass(&self, n: NodeId) -> Rational {
        self.path_from_root(n)
            .iter()
            .map(|&v| self.weight[v].clone())
            .product()
    }
}

/// Incremental construction of an [`EventTree`]; node 0 is the root.
#[derive(Debug, Clone)]
pub struct TreeBuilder {
    parent: Vec<Option<NodeId>>,
    weight: Vec<Rational>,
}

impl Default for TreeBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl TreeBuilder {
    pub fn new() -> Self {
        Self {
            parent: vec![None],
            weight: vec![one()],
        }
    }

    pub fn child(&mut self, parent: NodeId, weight: Rational) -> NodeId {
        self.parent.push(Some(parent));
        self.weight.push(weight);
        self.parent.len() - 1
    }

    pub fn build(self) -> Result<EventTree> {
        EventTree::new(self.parent, self.weight)
    }
}

/// Nonnegative prices for `N` assets on every node. The first
/// `shortable_count` assets may be sold short, the rest may not.
#[derive(Debug, Clone, PartialEq)]
pub struct MarketModel {
    tree: EventTree,
    prices: Vec<Vec<Rational>>,
    shortable: usize,
}

impl MarketModel {
    pub fn new(
        tree: EventTree,
        prices: Vec<Vec<Rational>>,
        shortable_count: usize,
    ) -> Result<Self> {
        if prices.len() != tree.len() {
            return Err(Error::DimensionMismatch {
                expected: tree.len(),
                found: prices.len(),
            });
        }
        let n_assets = prices[0].len();
        for (v, p) in prices.iter().enumerate() {
            if p.len() != n_assets {
                return Err(Error::DimensionMismatch {
                    expected: n_assets,
                    found: p.len(),
                });
            }
            if let Some(i) = p.iter().position(|x| x.is_negative()) {
                return Err(Error::Structure(format!(
                    "price of asset {i} at node {v} is negative"
                )));
            }
        }
        if shortable_count > n_assets {
            return Err(Error::Structure(format!(
                "shortable count {shortable_count} exceeds {n_assets} assets"
            )));
        }
        Ok(Self {
            tree,
            prices,
            shortable: shortable_count,
        })
    }

    /// Single-asset recombining-in-value binomial model stored as a full
    /// event tree of depth `steps`, with reference probability 1/2 per move.
    /// Children are ordered up then down.
    pub fn binomial(
        s0: Rational,
        up: Rational,
        down: Rational,
        steps: usize,
        shortable_count: usize,
    ) -> Result<Self> {
        let half = Rational::new(1.into(), 2.into());
        let mut b = TreeBuilder::new();
        let mut prices = vec![vec![s0]];
        let mut frontier = vec![0];
        for _ in 0..steps {
            let mut next = Vec::with_capacity(frontier.len() * 2);
            for &v in &frontier {
                let s = prices[v][0].clone();
                let u = b.child(v, half.clone());
                prices.push(vec![&s * &up]);
                let d = b.child(v, half.clone());
                prices.push(vec![&s * &down]);
                next.push(u);
                next.push(d);
            }
            frontier = next;
        }
        Self::new(b.build()?, prices, shortable_count)
    }

    pub fn tree(&self) -> &EventTree {
        &self.tree
    }

    pub fn n_assets(&self) -> usize {
        self.prices[0].len()
    }

    pub fn shortable_count(&self) -> usize {
        self.shortable
    }

    pub fn is_shortable(&self, asset: usize) -> bool {
        asset < self.shortable
    }

    pub fn price(&self, n: NodeId) -> &[Rational] {
        &self.prices[n]
    }

    pub fn prices(&self) -> &[Vec<Rational>] {
        &self.prices
    }

    /// `S_n - S_parent(n)`; zero at the root.
    pub fn increment(&self, n: NodeId) -> Vec<Rational> {
        match self.tree.parent(n) {
            None => vec![zero(); self.n_assets()],
            Some(p) => self.prices[n]
                .iter()
                .zip(&self.prices[p])
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Same prices and tree with a different short-sale partition.
    pub fn with_shortable_count(&self, shortable_count: usize) -> Result<Self> {
        Self::new(self.tree.clone(), self.prices.clone(), shortable_count)
    }
}

/// Predictable holdings: one position vector per non-terminal node, held
/// over the following period.
#[derive(Debug, Clone, PartialEq)]
pub struct Strategy {
    pub holdings: Vec<Option<Vec<Rational>>>,
    pub admissibility_bound: Option<Rational>,
}

impl Strategy {
    pub fn zero(model: &MarketModel) -> Self {
        Self::constant(model, vec![zero(); model.n_assets()])
    }

    /// Same position at every non-terminal node (buy-and-hold when all
    /// entries are constant).
    pub fn constant(model: &MarketModel, position: Vec<Rational>) -> Self {
        Self::from_fn(model, |_| position.clone())
    }

    pub fn from_fn(model: &MarketModel, mut f: impl FnMut(NodeId) -> Vec<Rational>) -> Self {
        let tree = model.tree();
        let holdings = (0..tree.len())
            .map(|v| if tree.is_leaf(v) { None } else { Some(f(v)) })
            .collect();
        Self {
            holdings,
            admissibility_bound: None,
        }
    }

    pub fn holding(&self, n: NodeId) -> Option<&[Rational]> {
        self.holdings.get(n).and_then(|h| h.as_deref())
    }

    /// `a * self + b * other`, node by node.
    pub fn combine(&self, a: &Rational, other: &Strategy, b: &Rational) -> Strategy {
        let holdings = self
            .holdings
            .iter()
            .zip(&other.holdings)
            .map(|(x, y)| match (x, y) {
                (Some(x), Some(y)) => Some(x.iter().zip(y).map(|(p, q)| a * p + b * q).collect()),
                _ => None,
            })
            .collect();
        Strategy {
            holdings,
            admissibility_bound: None,
        }
    }

    fn checked_holding(&self, model: &MarketModel, n: NodeId) -> Result<&[Rational]> {
        let h = self
            .holding(n)
            .ok_or_else(|| Error::Structure(format!("no holdings at non-terminal node {n}")))?;
        if h.len() != model.n_assets() {
            return Err(Error::DimensionMismatch {
                expected: model.n_assets(),
                found: h.len(),
            });
        }
        Ok(h)
    }
}

/// A real-valued adapted process, one value per node.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueProcess {
    pub values: Vec<Rational>,
}

impl ValueProcess {
    pub fn at(&self, n: NodeId) -> &Rational {
        &self.values[n]
    }

    pub fn terminal(&self, tree: &EventTree) -> Claim {
        Claim {
            payoff: tree
                .leaves()
                .iter()
                .map(|&l| self.values[l].clone())
                .collect(),
        }
    }

    pub fn min(&self) -> Rational {
        self.values.iter().min().cloned().unwrap_or_else(zero)
    }
}

/// Terminal payoff, indexed by position in [`EventTree::leaves`].
#[derive(Debug, Clone, PartialEq)]
pub struct Claim {
    pub payoff: Vec<Rational>,
}

impl Claim {
    pub fn new(tree: &EventTree, payoff: Vec<Rational>) -> Result<Self> {
        if payoff.len() != tree.leaf_count() {
            return Err(Error::DimensionMismatch {
                expected: tree.leaf_count(),
                found: payoff.len(),
            });
        }
        Ok(Self { payoff })
    }

    pub fn from_fn(tree: &EventTree, mut f: impl FnMut(NodeId) -> Rational) -> Self {
        Self {
            payoff: tree.leaves().iter().map(|&l| f(l)).collect(),
        }
    }

    pub fn constant(tree: &EventTree, c: Rational) -> Self {
        Self {
            payoff: vec![c; tree.leaf_count()],
        }
    }

    pub fn at_leaf(&self, position: usize) -> &Rational {
        &self.payoff[position]
    }

    pub fn min(&self) -> Rational {
        self.payoff.iter().min().cloned().unwrap_or_else(zero)
    }

    pub fn max(&self) -> Rational {
        self.payoff.iter().max().cloned().unwrap_or_else(zero)
    }

    pub fn shifted(&self, c: &Rational) -> Claim {
        Claim {
            payoff: self.payoff.iter().map(|x| x + c).collect(),
        }
    }

    pub fn check_len(&self, tree: &EventTree) -> Result<()> {
        if self.payoff.len() != tree.leaf_count() {
            return Err(Error::DimensionMismatch {
                expected: tree.leaf_count(),
                found: self.payoff.len(),
            });
        }
        Ok(())
    }
}

/// `(H·S)`: at each node, the sum of `H_parent · (S_child - S_parent)` along
/// the path from the root.
pub fn stochastic_integral(model: &MarketModel, strategy: &Strategy) -> Result<ValueProcess> {
    let tree = model.tree();
    let mut values = vec![zero(); tree.len()];
    for &v in tree.preorder() {
        if let Some(p) = tree.parent(v) {
            let h = strategy.checked_holding(model, p)?;
            values[v] = &values[p] + dot(h, &model.increment(v));
        }
    }
    Ok(ValueProcess { values })
}

#[derive(Debug, Clone, PartialEq)]
pub enum AdmissibilityViolation {
    MissingHoldings {
        node: NodeId,
    },
    ShortSale {
        node: NodeId,
        asset: usize,
    },
    BelowFloor {
        node: NodeId,
        value: Rational,
        alpha: Rational,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    /// Lowest value of `(H·S)` over all nodes.
    pub floor: Rational,
    /// Declared bound, or `max(0, -floor)` when none was declared.
    pub alpha: Rational,
    pub violation: Option<AdmissibilityViolation>,
}

/// No short positions in assets beyond the shortable ones, and gains never
/// below `-alpha`. On a finite tree the floor always exists; it is reported
/// so it can be inspected.
pub fn is_admissible(model: &MarketModel, strategy: &Strategy) -> AdmissibilityReport {
    let tree = model.tree();
    let d = model.shortable_count();
    for v in tree.internal_nodes() {
        match strategy.checked_holding(model, v) {
            Err(_) => {
                return AdmissibilityReport {
                    admissible: false,
                    floor: zero(),
                    alpha: zero(),
                    violation: Some(AdmissibilityViolation::MissingHoldings { node: v }),
                }
            }
            Ok(h) => {
                if let Some(i) = (d..h.len()).find(|&i| h[i].is_negative()) {
                    return AdmissibilityReport {
                        admissible: false,
                        floor: zero(),
                        alpha: zero(),
                        violation: Some(AdmissibilityViolation::ShortSale { node: v, asset: i }),
                    };
                }
            }
        }
    }
    let gains = stochastic_integral(model, strategy).expect("holdings checked above");
    let floor = gains.min();
    let alpha = match &strategy.admissibility_bound {
        Some(a) => a.clone(),
        None => std::cmp::max(zero(), -&floor),
    };
    let breach = tree
        .preorder()
        .iter()
        .copied()
        .find(|&v| gains.values[v] < -&alpha);
    let violation = breach.map(|node| AdmissibilityViolation::BelowFloor {
        node,
        value: gains.values[node].clone(),
        alpha: alpha.clone(),
    });
    AdmissibilityReport {
        admissible: violation.is_none(),
        floor,
        alpha,
        violation,
    }
}

/// Money-market balance `H^0 = (H·S) - H·S`, using the post-trade holdings
/// at each node (at terminal nodes, the holdings carried in from the
/// parent). Together with `H` it is self-financing from zero initial value.
pub fn cash_balance(model: &MarketModel, strategy: &Strategy) -> Result<ValueProcess> {
    let tree = model.tree();
    let gains = stochastic_integral(model, strategy)?;
    let mut values = vec![zero(); tree.len()];
    for v in 0..tree.len() {
        let held = if tree.is_leaf(v) {
            match tree.parent(v) {
                Some(p) => strategy.checked_holding(model, p)?,
                None => {
                    // one-node tree: nothing is ever held
                    continue;
                }
            }
        } else {
            strategy.checked_holding(model, v)?
        };
        values[v] = &gains.values[v] - dot(held, model.price(v));
    }
    Ok(ValueProcess { values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::one_period;
    use crate::rational::{int, ratio};

    #[test]
    fn tree_validation() {
        assert!(EventTree::new(vec![None, None], vec![one(), one()]).is_err());
        assert!(EventTree::new(vec![Some(1), Some(0)], vec![one(), one()]).is_err());
        // weights not summing to one
        assert!(EventTree::new(
            vec![None, Some(0), Some(0)],
            vec![one(), ratio(1, 2), ratio(1, 3)]
        )
        .is_err());
        // zero weight
        assert!(EventTree::new(vec![None, Some(0), Some(0)], vec![one(), one(), zero()]).is_err());
        // ragged horizon
        let ragged = EventTree::new(
            vec![None, Some(0), Some(0), Some(1)],
            vec![one(), ratio(1, 2), ratio(1, 2), one()],
        );
        assert!(ragged.is_err());
        let single = EventTree::new(vec![None], vec![one()]).unwrap();
        assert_eq!(single.horizon(), 0);
        assert_eq!(single.leaves(), &[0]);
    }

    #[test]
    fn leaf_spans_are_contiguous() {
        let m = MarketModel::binomial(int(1), int(2), ratio(1, 2), 3, 0).unwrap();
        let t = m.tree();
        assert_eq!(t.leaf_count(), 8);
        for v in 0..t.len() {
            let span = t.leaf_span(v);
            for k in span.clone() {
                assert!(t.path_from_root(t.leaves()[k]).contains(&v));
            }
            assert_eq!(span.len(), 1 << (3 - t.time(v)));
        }
        assert_eq!(t.reference_mass(t.leaves()[0]), ratio(1, 8));
    }

    #[test]
    fn zero_strategy_has_zero_gains() {
        let m = MarketModel::binomial(int(1), int(2), ratio(1, 2), 2, 0).unwrap();
        let g = stochastic_integral(&m, &Strategy::zero(&m)).unwrap();
        assert!(g.values.iter().all(num_traits::Zero::is_zero));
        let cash = cash_balance(&m, &Strategy::zero(&m)).unwrap();
        assert!(cash.values.iter().all(num_traits::Zero::is_zero));
    }

    #[test]
    fn single_period_unit_holding() {
        let m = one_period(&[int(1), int(2), ratio(1, 2)], 0);
        let g = stochastic_integral(&m, &Strategy::constant(&m, vec![int(1)])).unwrap();
        assert_eq!(g.terminal(m.tree()).payoff, vec![int(1), ratio(-1, 2)]);
    }

    #[test]
    fn buy_and_hold_telescopes() {
        let m = MarketModel::binomial(int(3), ratio(3, 2), ratio(2, 3), 3, 0).unwrap();
        let h = Strategy::constant(&m, vec![int(1)]);
        let g = stochastic_integral(&m, &h).unwrap();
        for &l in m.tree().leaves() {
            assert_eq!(g.values[l], &m.price(l)[0] - int(3));
        }
        let cash = cash_balance(&m, &h).unwrap();
        assert!(cash.values.iter().all(|c| *c == int(-3)));
    }

    #[test]
    fn missing_holdings_is_structural() {
        let m = one_period(&[int(1), int(2), ratio(1, 2)], 0);
        let mut h = Strategy::zero(&m);
        h.holdings[0] = None;
        assert!(matches!(
            stochastic_integral(&m, &h),
            Err(Error::Structure(_))
        ));
        assert!(matches!(
            is_admissible(&m, &h).violation,
            Some(AdmissibilityViolation::MissingHoldings { node: 0 })
        ));
    }

    #[test]
    fn admissibility_under_prohibition() {
        let m = one_period(&[int(1), int(2), ratio(1, 2)], 0);
        assert!(is_admissible(&m, &Strategy::zero(&m)).admissible);
        let short = Strategy::constant(&m, vec![int(-1)]);
        let rep = is_admissible(&m, &short);
        assert!(!rep.admissible);
        assert_eq!(
            rep.violation,
            Some(AdmissibilityViolation::ShortSale { node: 0, asset: 0 })
        );

        let m = m.with_shortable_count(1).unwrap();
        let rep = is_admissible(&m, &short);
        assert!(rep.admissible);
        // worst branch is the up move: -(2 - 1)
        assert_eq!(rep.floor, int(-1));
        assert_eq!(rep.alpha, int(1));

        let mut tight = short.clone();
        tight.admissibility_bound = Some(ratio(1, 2));
        let rep = is_admissible(&m, &tight);
        assert!(matches!(
            rep.violation,
            Some(AdmissibilityViolation::BelowFloor { .. })
        ));
    }

    #[test]
    fn swap_strategy_cash_funds_rebalancing() {
        // two assets over two periods; hold asset 0, then swap into asset 1
        let mut b = TreeBuilder::new();
        let u = b.child(0, ratio(1, 2));
        let d = b.child(0, ratio(1, 2));
        let uu = b.child(u, one());
        let dd = b.child(d, one());
        let tree = b.build().unwrap();
        let mut prices = vec![vec![]; 5];
        prices[0] = vec![int(2), int(1)];
        prices[u] = vec![int(3), int(2)];
        prices[d] = vec![int(1), ratio(1, 2)];
        prices[uu] = vec![int(4), int(1)];
        prices[dd] = vec![int(1), int(1)];
        let m = MarketModel::new(tree, prices, 2).unwrap();
        let h = Strategy::from_fn(&m, |v| {
            if v == 0 {
                vec![int(1), int(0)]
            } else {
                vec![int(0), int(2)]
            }
        });
        let gains = stochastic_integral(&m, &h).unwrap();
        let cash = cash_balance(&m, &h).unwrap();
        let t = m.tree();
        for v in 0..t.len() {
            // budget identity
            let held = if t.is_leaf(v) {
                h.holding(t.parent(v).unwrap()).unwrap()
            } else {
                h.holding(v).unwrap()
            };
            assert_eq!(&cash.values[v] + dot(held, m.price(v)), gains.values[v]);
            // rebalancing at v is paid for by cash
            if let (Some(p), false) = (t.parent(v), t.is_leaf(v)) {
                let before = h.holding(p).unwrap();
                let after = h.holding(v).unwrap();
                let cost: Rational = after
                    .iter()
                    .zip(before)
                    .zip(m.price(v))
                    .map(|((a, b), s)| (a - b) * s)
                    .sum();
                assert_eq!(&cash.values[p] - &cash.values[v], cost);
            }
        }
        // node u: sell 1 share at 3, buy 2 at 2: cash moves from -2 to -2 + 3 - 4
        assert_eq!(cash.values[u], int(-3));
    }
}
