//! Stochastic-exponential stock `S = E(R)` with `R` a continuous martingale
//! of deterministic quadratic variation `[R,R]_T`, and the claim
//! `f = exp(-R_T)`.
//!
//! The densities `E(-αR)_T` give supermartingale measures with
//! `E^{Q^α}[f] = exp((1/2 + α)[R,R]_T)`, unbounded in `α`. Two lattice
//! counterparts are reported:
//!
//! * the same tilt on a symmetric random walk with steps `±h`,
//!   `h = sqrt([R,R]_T / n)`, where `E^{Q^α}[f] = (cosh h + αh sinh h)^n`
//!   (defined while `αh < 1`);
//! * the exact super-replication price without short sales of the
//!   rationalized `exp(-R_T)` on the tree with `S_{k+1} = S_k (1 ± h)`,
//!   which grows with the depth like `exp(sqrt(n [R,R]_T))`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hedging::superreplication_price;
use crate::market::{Claim, MarketModel};
use crate::rational::{format, from_f64_rounded, int, one, to_f64, Rational};

/// Denominator used to rationalize lattice steps and payoffs.
pub const DENOMINATOR: i64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaRow {
    pub seed: u64,
    pub quadratic_variation: f64,
    pub alpha: f64,
    pub closed_form: f64,
    pub lattice_steps: usize,
    /// Empty when `αh >= 1` (the tilt is not a probability on the lattice).
    pub lattice_tilted: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SupRow {
    pub seed: u64,
    pub quadratic_variation: f64,
    pub depth: usize,
    pub step: String,
    /// Exact super-replication price as a fraction.
    pub sup_price: String,
    pub sup_price_f64: f64,
    /// `exp(n h)`, the payoff on the all-down path.
    pub all_down_payoff: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StochExpReport {
    pub alphas: Vec<AlphaRow>,
    pub sup: Vec<SupRow>,
}

pub fn closed_form(quadratic_variation: f64, alpha: f64) -> f64 {
    ((0.5 + alpha) * quadratic_variation).exp()
}

/// Tilted expectation on the `n`-step walk, or `None` outside `αh < 1`.
pub fn lattice_tilted(quadratic_variation: f64, alpha: f64, n: usize) -> Option<f64> {
    let h = (quadratic_variation / n as f64).sqrt();
    (alpha * h < 1.0)
        .then(|| (n as f64) * (h.cosh() + alpha * h * h.sinh()).ln())
        .map(f64::exp)
}

/// Exact super-replication price of `exp(-R_T)` on the depth-`n` lattice.
pub fn lattice_sup_price(quadratic_variation: f64, n: usize) -> Result<(Rational, Rational)> {
    let h = from_f64_rounded((quadratic_variation / n as f64).sqrt(), DENOMINATOR)
        .filter(|h| h < &one() && *h > int(0))
        .ok_or_else(|| {
            Error::Domain(format!(
                "step sqrt({quadratic_variation}/{n}) must lie in (0, 1)"
            ))
        })?;
    let model = MarketModel::binomial(one(), one() + &h, one() - &h, n, 0)?;
    let tree = model.tree();
    let mut r = vec![int(0); tree.len()];
    for &v in tree.preorder() {
        if let Some(p) = tree.parent(v) {
            r[v] = if model.price(v)[0] > model.price(p)[0] {
                &r[p] + &h
            } else {
                &r[p] - &h
            };
        }
    }
    let mut payoff = Vec::with_capacity(tree.leaf_count());
    for &l in tree.leaves() {
        let x = (-to_f64(&r[l])).exp();
        payoff.push(
            from_f64_rounded(x, DENOMINATOR)
                .ok_or_else(|| Error::Domain("payoff overflow".into()))?,
        );
    }
    let claim = Claim::new(tree, payoff)?;
    Ok((h, superreplication_price(&model, &claim)?.value))
}

pub fn stochexp_alpha_curve(
    quadratic_variation: f64,
    alphas: &[f64],
    lattice_steps: usize,
    sup_depths: &[usize],
    seed: u64,
) -> Result<StochExpReport> {
    if quadratic_variation.is_nan() || quadratic_variation <= 0.0 || lattice_steps == 0 {
        return Err(Error::Domain(
            "quadratic variation and lattice steps must be positive".into(),
        ));
    }
    let alphas = alphas
        .iter()
        .map(|&alpha| AlphaRow {
            seed,
            quadratic_variation,
            alpha,
            closed_form: closed_form(quadratic_variation, alpha),
            lattice_steps,
            lattice_tilted: lattice_tilted(quadratic_variation, alpha, lattice_steps),
        })
        .collect();
    let mut sup = Vec::new();
    for &n in sup_depths {
        let (h, price) = lattice_sup_price(quadratic_variation, n)?;
        sup.push(SupRow {
            seed,
            quadratic_variation,
            depth: n,
            step: format(&h),
            sup_price: format(&price),
            sup_price_f64: to_f64(&price),
            all_down_payoff: (n as f64 * to_f64(&h)).exp(),
        });
    }
    Ok(StochExpReport { alphas, sup })
}
