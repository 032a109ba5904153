//! Reciprocal of a Black–Scholes stock under the tilted measures
//! `dQ^γ/dP = exp(-γ B_T - γ² T / 2)`.
//!
//! With `S_T = S_0 exp(σ B_T + (μ - σ²/2) T)` the stock is a
//! `Q^γ`-supermartingale for every `γ >= μ/σ`, and
//! `E^{Q^γ}[1/S_T] = exp((σγ - μ + σ²) T) / S_0`, which is unbounded in
//! `γ`: the reciprocal cannot be super-replicated without short sales.
//! The estimator samples `B_T` under `P` and applies the density as an
//! importance weight.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::error::{Error, Result};

pub const MIN_PATHS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BsParams {
    pub s0: f64,
    pub mu: f64,
    pub sigma: f64,
    pub gamma: f64,
    pub t: f64,
    pub paths: usize,
}

/// One CSV row.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TiltEstimate {
    pub seed: u64,
    pub s0: f64,
    pub mu: f64,
    pub sigma: f64,
    pub t: f64,
    pub gamma: f64,
    pub paths: usize,
    pub estimate: f64,
    pub stderr: f64,
    pub closed_form: f64,
    /// `(estimate - closed_form) / stderr`.
    pub z_score: f64,
}

impl BsParams {
    pub fn closed_form(&self) -> f64 {
        ((self.sigma * self.gamma - self.mu + self.sigma * self.sigma) * self.t).exp() / self.s0
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Domain(m));
        if self.sigma.is_nan() || self.sigma <= 0.0 {
            return bad(format!("sigma must be positive, got {}", self.sigma));
        }
        if self.s0.is_nan() || self.s0 <= 0.0 || self.t.is_nan() || self.t <= 0.0 {
            return bad("S0 and T must be positive".into());
        }
        if self.gamma.is_nan() || self.gamma < self.mu / self.sigma {
            return bad(format!(
                "gamma {} below mu/sigma = {}",
                self.gamma,
                self.mu / self.sigma
            ));
        }
        if self.paths < MIN_PATHS {
            return bad(format!(
                "at least {MIN_PATHS} paths required, got {}",
                self.paths
            ));
        }
        Ok(())
    }
}

fn draws(seed: u64, paths: usize, t: f64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sd = t.sqrt();
    (0..paths)
        .map(|_| {
            let z: f64 = StandardNormal.sample(&mut rng);
            sd * z
        })
        .collect()
}

fn estimate(p: &BsParams, seed: u64, brownian: &[f64]) -> TiltEstimate {
    let n = brownian.len() as f64;
    let drift = (p.mu - 0.5 * p.sigma * p.sigma) * p.t;
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for &b in brownian {
        let weight = (-p.gamma * b - 0.5 * p.gamma * p.gamma * p.t).exp();
        let reciprocal = (-(p.sigma * b + drift)).exp() / p.s0;
        let y = weight * reciprocal;
        sum += y;
        sum_sq += y * y;
    }
    let mean = sum / n;
    let var = (sum_sq / n - mean * mean).max(0.0) * n / (n - 1.0);
    let stderr = (var / n).sqrt();
    let closed_form = p.closed_form();
    TiltEstimate {
        seed,
        s0: p.s0,
        mu: p.mu,
        sigma: p.sigma,
        t: p.t,
        gamma: p.gamma,
        paths: brownian.len(),
        estimate: mean,
        stderr,
        closed_form,
        z_score: (mean - closed_form) / stderr,
    }
}

/// Monte-Carlo estimate of `E^{Q^γ}[1/S_T]` with its standard error.
pub fn bs_tilted_expectation(p: &BsParams, seed: u64) -> Result<TiltEstimate> {
    p.validate()?;
    Ok(estimate(p, seed, &draws(seed, p.paths, p.t)))
}

/// Estimates along a `γ` grid from one set of draws (common random
/// numbers), so differences between grid points are not swamped by noise.
pub fn bs_gamma_grid(base: &BsParams, gammas: &[f64], seed: u64) -> Result<Vec<TiltEstimate>> {
    let params: Vec<BsParams> = gammas
        .iter()
        .map(|&gamma| BsParams { gamma, ..*base })
        .collect();
    for p in &params {
        p.validate()?;
    }
    let brownian = draws(seed, base.paths, base.t);
    Ok(params
        .iter()
        .map(|p| estimate(p, seed, &brownian))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> BsParams {
        BsParams {
            s0: 1.0,
            mu: 0.0,
            sigma: 0.2,
            gamma: 0.0,
            t: 1.0,
            paths: MIN_PATHS,
        }
    }

    #[test]
    fn closed_form_values() {
        assert!((base().closed_form() - 0.04f64.exp()).abs() < 1e-15);
        // martingale tilt gamma = mu/sigma leaves exp(sigma^2 T) / S0
        let p = BsParams {
            s0: 2.0,
            mu: 0.1,
            sigma: 0.2,
            gamma: 0.5,
            ..base()
        };
        assert!((p.closed_form() - 0.04f64.exp() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn estimate_within_three_standard_errors() {
        let e = bs_tilted_expectation(&base(), 7).unwrap();
        assert!(e.z_score.abs() < 3.0, "{e:?}");
        assert_eq!(e, bs_tilted_expectation(&base(), 7).unwrap());
    }

    #[test]
    fn domain_errors() {
        assert!(bs_tilted_expectation(
            &BsParams {
                sigma: 0.0,
                ..base()
            },
            1
        )
        .is_err());
        assert!(bs_tilted_expectation(
            &BsParams {
                mu: 0.1,
                gamma: 0.1,
                ..base()
            },
            1
        )
        .is_err());
        assert!(bs_tilted_expectation(
            &BsParams {
                paths: 9_999,
                ..base()
            },
            1
        )
        .is_err());
    }
}
