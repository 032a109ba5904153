//! Variable layout for LPs whose unknowns include predictable holdings.

use num_traits::Zero;

use crate::lp::{LinearProgram, Relation, VarBound};
use crate::market::{EventTree, NodeId, Strategy};
use crate::rational::{one, zero, Rational};

pub(crate) type LinearForm = Vec<(usize, Rational)>;

/// Holdings for `n_assets` assets at every internal node occupy the LP
/// variables `offset .. offset + internal_count * n_assets`.
#[derive(Debug, Clone)]
pub(crate) struct HoldingLayout {
    offset: usize,
    n_assets: usize,
    slot: Vec<Option<usize>>,
}

impl HoldingLayout {
    pub fn new(tree: &EventTree, n_assets: usize, offset: usize) -> Self {
        let mut slot = vec![None; tree.len()];
        for (k, v) in tree.internal_nodes().enumerate() {
            slot[v] = Some(k);
        }
        Self {
            offset,
            n_assets,
            slot,
        }
    }

    pub fn var(&self, node: NodeId, asset: usize) -> usize {
        let k = self.slot[node].expect("holdings only exist on internal nodes");
        self.offset + k * self.n_assets + asset
    }

    pub fn len(&self) -> usize {
        self.slot.iter().flatten().count() * self.n_assets
    }

    pub fn end(&self) -> usize {
        self.offset + self.len()
    }

    pub fn vars(&self) -> std::ops::Range<usize> {
        self.offset..self.end()
    }

    /// Marks the first `shortable` assets free; the others keep the
    /// default nonnegativity.
    pub fn apply_short_sale_bounds(&self, lp: &mut LinearProgram, shortable: usize) {
        for (v, s) in self.slot.iter().enumerate() {
            if s.is_some() {
                for i in 0..shortable {
                    lp.bounds[self.var(v, i)] = VarBound::Free;
                }
            }
        }
    }

    /// `|h| <= bound` on every holding variable.
    pub fn add_box(&self, lp: &mut LinearProgram, bound: &Rational) {
        for j in self.vars() {
            lp.add_sparse(&[(j, one())], Relation::Le, bound.clone());
            if lp.bounds[j] == VarBound::Free {
                lp.add_sparse(&[(j, one())], Relation::Ge, -bound);
            }
        }
    }

    /// Linear form of the gains process at every node, for holdings traded
    /// against `prices` (one vector of `n_assets` prices per node).
    pub fn gains_forms(&self, tree: &EventTree, prices: &[Vec<Rational>]) -> Vec<LinearForm> {
        let mut forms: Vec<LinearForm> = vec![Vec::new(); tree.len()];
        for &v in tree.preorder() {
            if let Some(p) = tree.parent(v) {
                let mut form = forms[p].clone();
                for i in 0..self.n_assets {
                    let delta = &prices[v][i] - &prices[p][i];
                    if !delta.is_zero() {
                        form.push((self.var(p, i), delta));
                    }
                }
                forms[v] = form;
            }
        }
        forms
    }

    pub fn decode(&self, tree: &EventTree, x: &[Rational]) -> Strategy {
        let holdings = (0..tree.len())
            .map(|v| {
                self.slot[v].map(|_| {
                    (0..self.n_assets)
                        .map(|i| x[self.var(v, i)].clone())
                        .collect()
                })
            })
            .collect();
        Strategy {
            holdings,
            admissibility_bound: None,
        }
    }
}

/// Sum of a family of linear forms, e.g. the gains summed over leaves.
pub(crate) fn sum_forms<'a>(
    forms: impl IntoIterator<Item = &'a LinearForm>,
    n: usize,
) -> Vec<Rational> {
    let mut out = vec![zero(); n];
    for f in forms {
        for (j, a) in f {
            out[*j] += a;
        }
    }
    out
}
