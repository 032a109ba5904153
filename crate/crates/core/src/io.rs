//! JSON file formats. Every rational is an exact `"p/q"` (or integer)
//! string.
//!
//! Model:
//!
//! ```json
//! {"n_assets": 1, "shortable_count": 0,
//!  "nodes": [{"id": 0, "parent": null, "prices": ["1"]},
//!            {"id": 1, "parent": 0, "weight": "1/2", "prices": ["2"]},
//!            {"id": 2, "parent": 0, "weight": "1/2", "prices": ["1/2"]}]}
//! ```
//!
//! `weight` is the reference probability of the branch from the parent and
//! may be omitted on the root. Ids must be `0..n`. Claims and measures are
//! objects keyed by terminal node id, strategies by internal node id (a list
//! per node), and numeraires and value processes by every node id.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::market::{Claim, EventTree, MarketModel, NodeId, Strategy};
use crate::measures::Measure;
use crate::numeraire::NumeraireProcess;
use crate::rational::{format, one, parse, Rational};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelFile {
    pub n_assets: usize,
    pub shortable_count: usize,
    pub nodes: Vec<NodeRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NodeRecord {
    pub id: NodeId,
    pub parent: Option<NodeId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<String>,
    pub prices: Vec<String>,
}

pub type NodeMap<T> = BTreeMap<NodeId, T>;

impl ModelFile {
    pub fn into_model(self) -> Result<MarketModel> {
        let n = self.nodes.len();
        let mut parent = vec![None; n];
        let mut weight = vec![one(); n];
        let mut prices = vec![Vec::new(); n];
        let mut seen = vec![false; n];
        for rec in self.nodes {
            if rec.id >= n || seen[rec.id] {
                return Err(Error::Structure(format!(
                    "node ids must be 0..{n} without repeats, got {}",
                    rec.id
                )));
            }
            seen[rec.id] = true;
            parent[rec.id] = rec.parent;
            match (&rec.parent, &rec.weight) {
                (Some(_), None) => {
                    return Err(Error::Structure(format!(
                        "node {} has a parent but no weight",
                        rec.id
                    )))
                }
                (_, Some(w)) => weight[rec.id] = parse(w)?,
                (None, None) => {}
            }
            prices[rec.id] = rec.prices.iter().map(|p| parse(p)).collect::<Result<_>>()?;
        }
        for (v, p) in prices.iter().enumerate() {
            if p.len() != self.n_assets {
                return Err(Error::Structure(format!(
                    "node {v} lists {} prices for {} assets",
                    p.len(),
                    self.n_assets
                )));
            }
        }
        let tree = EventTree::new(parent, weight)?;
        MarketModel::new(tree, prices, self.shortable_count)
    }

    pub fn from_model(model: &MarketModel) -> Self {
        let tree = model.tree();
        let nodes = (0..tree.len())
            .map(|v| NodeRecord {
                id: v,
                parent: tree.parent(v),
                weight: tree.parent(v).map(|_| format(tree.weight(v))),
                prices: model.price(v).iter().map(format).collect(),
            })
            .collect();
        ModelFile {
            n_assets: model.n_assets(),
            shortable_count: model.shortable_count(),
            nodes,
        }
    }
}

pub fn model_from_json(text: &str) -> Result<MarketModel> {
    serde_json::from_str::<ModelFile>(text)?.into_model()
}

pub fn model_to_json(model: &MarketModel) -> Result<String> {
    Ok(serde_json::to_string_pretty(&ModelFile::from_model(model))?)
}

fn parse_map(text: &str) -> Result<NodeMap<String>> {
    Ok(serde_json::from_str(text)?)
}

fn leaf_values(tree: &EventTree, map: NodeMap<String>, what: &str) -> Result<Vec<Rational>> {
    if let Some(bad) = map.keys().find(|&&v| tree.leaf_position(v).is_none()) {
        return Err(Error::Structure(format!(
            "{what} names node {bad}, which is not terminal"
        )));
    }
    tree.leaves()
        .iter()
        .map(|l| {
            map.get(l)
                .ok_or_else(|| {
                    Error::Structure(format!("{what} has no value for terminal node {l}"))
                })
                .and_then(|s| parse(s))
        })
        .collect()
}

fn leaf_map(tree: &EventTree, values: &[Rational]) -> NodeMap<String> {
    tree.leaves()
        .iter()
        .zip(values)
        .map(|(&l, x)| (l, format(x)))
        .collect()
}

pub fn claim_from_json(tree: &EventTree, text: &str) -> Result<Claim> {
    Claim::new(tree, leaf_values(tree, parse_map(text)?, "claim")?)
}

pub fn claim_to_json(tree: &EventTree, claim: &Claim) -> Result<String> {
    Ok(serde_json::to_string_pretty(&leaf_map(
        tree,
        &claim.payoff,
    ))?)
}

pub fn measure_from_json(tree: &EventTree, text: &str) -> Result<Measure> {
    Measure::new(tree, leaf_values(tree, parse_map(text)?, "measure")?)
}

pub fn measure_to_json(tree: &EventTree, measure: &Measure) -> Result<String> {
    Ok(serde_json::to_string_pretty(&leaf_map(
        tree,
        &measure.weights,
    ))?)
}

/// Strategy with a holding vector of `width` entries at every internal node.
pub fn strategy_from_json(tree: &EventTree, width: usize, text: &str) -> Result<Strategy> {
    let map: NodeMap<Vec<String>> = serde_json::from_str(text)?;
    if let Some(bad) = map.keys().find(|&&v| v >= tree.len() || tree.is_leaf(v)) {
        return Err(Error::Structure(format!(
            "strategy names node {bad}, which is not internal"
        )));
    }
    let mut holdings = vec![None; tree.len()];
    for v in tree.internal_nodes() {
        let h = map
            .get(&v)
            .ok_or_else(|| Error::Structure(format!("strategy has no holding at node {v}")))?;
        if h.len() != width {
            return Err(Error::DimensionMismatch {
                expected: width,
                found: h.len(),
            });
        }
        holdings[v] = Some(h.iter().map(|x| parse(x)).collect::<Result<Vec<_>>>()?);
    }
    Ok(Strategy {
        holdings,
        admissibility_bound: None,
    })
}

pub fn strategy_to_json(strategy: &Strategy) -> Result<String> {
    let map: NodeMap<Vec<String>> = strategy
        .holdings
        .iter()
        .enumerate()
        .filter_map(|(v, h)| h.as_ref().map(|h| (v, h.iter().map(format).collect())))
        .collect();
    Ok(serde_json::to_string_pretty(&map)?)
}

/// A value at every node, e.g. a price or consumption process.
pub fn node_values_from_json(tree: &EventTree, text: &str) -> Result<Vec<Rational>> {
    let map = parse_map(text)?;
    if let Some(bad) = map.keys().find(|&&v| v >= tree.len()) {
        return Err(Error::Structure(format!("unknown node {bad}")));
    }
    (0..tree.len())
        .map(|v| {
            map.get(&v)
                .ok_or_else(|| Error::Structure(format!("no value for node {v}")))
                .and_then(|s| parse(s))
        })
        .collect()
}

pub fn node_values_to_json(values: &[Rational]) -> Result<String> {
    let map: NodeMap<String> = values
        .iter()
        .enumerate()
        .map(|(v, x)| (v, format(x)))
        .collect();
    Ok(serde_json::to_string_pretty(&map)?)
}

pub fn numeraire_from_json(model: &MarketModel, text: &str) -> Result<NumeraireProcess> {
    NumeraireProcess::new(model, node_values_from_json(model.tree(), text)?)
}

pub fn read_model(path: impl AsRef<Path>) -> Result<MarketModel> {
    model_from_json(&std::fs::read_to_string(path)?)
}
