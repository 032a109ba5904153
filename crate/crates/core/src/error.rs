use thiserror::Error;

use crate::lp::LpError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Structure(String),
    #[error("invalid event tree: {0}")]
    InvalidTree(String),
    #[error("conditional expectation undefined at zero-mass node {0}")]
    UndefinedConditional(usize),
    #[error("no equivalent supermartingale measure exists: the market admits arbitrage")]
    NoEquivalentMeasure,
    #[error("claim pays {value} < 0 at terminal node {node}")]
    NegativePayoff { node: usize, value: String },
    #[error("strategy is not admissible: {0}")]
    Inadmissible(String),
    #[error("numeraire must be strictly positive, got {value} at node {node}")]
    NonPositiveNumeraire { node: usize, value: String },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("parameter out of domain: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
