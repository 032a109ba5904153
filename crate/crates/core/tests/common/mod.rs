//! Seeded random markets, claims and strategies for the integration suites.
#![allow(dead_code)]

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use shortsale::market::TreeBuilder;
use shortsale::rational::{int, ratio, Rational};
use shortsale::{esmm_feasibility, Claim, MarketModel, Strategy};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn factor(rng: &mut ChaCha8Rng) -> Rational {
    if rng.random_ratio(1, 25) {
        return int(0);
    }
    let choices = [ratio(1, 2), ratio(2, 3), int(1), ratio(3, 2), int(2)];
    choices.choose(rng).unwrap().clone()
}

/// Tree of depth 0..=3 with 1..=3 children per node, 1..=2 assets, random
/// shortable count, prices moving by factors in {1/2, 2/3, 1, 3/2, 2} and
/// occasionally dropping to 0 (and staying there).
pub fn random_market(rng: &mut ChaCha8Rng) -> MarketModel {
    let depth = rng.random_range(0..=3);
    let n_assets = rng.random_range(1..=2);
    let shortable = rng.random_range(0..=n_assets);
    let mut b = TreeBuilder::new();
    let roots = [ratio(1, 2), int(1), ratio(3, 2), int(2)];
    let mut prices: Vec<Vec<Rational>> = vec![(0..n_assets)
        .map(|_| roots.choose(rng).unwrap().clone())
        .collect()];
    let mut frontier = vec![0usize];
    for _ in 0..depth {
        let mut next = Vec::new();
        for &v in &frontier {
            let k = rng.random_range(1..=3);
            let raw: Vec<i64> = (0..k).map(|_| rng.random_range(1..=4)).collect();
            let total: i64 = raw.iter().sum();
            for w in raw {
                let c = b.child(v, ratio(w, total));
                let p: Vec<Rational> = prices[v].iter().map(|s| s * factor(rng)).collect();
                prices.push(p);
                next.push(c);
            }
        }
        frontier = next;
    }
    MarketModel::new(b.build().unwrap(), prices, shortable).unwrap()
}

/// Rejection-samples a market that admits an equivalent supermartingale
/// measure.
pub fn random_arbitrage_free_market(rng: &mut ChaCha8Rng) -> MarketModel {
    loop {
        let m = random_market(rng);
        if esmm_feasibility(&m).unwrap().is_some() {
            return m;
        }
    }
}

pub fn small_rational(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rational {
    ratio(rng.random_range(lo..=hi), rng.random_range(1..=3))
}

pub fn random_claim(rng: &mut ChaCha8Rng, m: &MarketModel, lo: i64, hi: i64) -> Claim {
    let payoff = (0..m.tree().leaf_count())
        .map(|_| small_rational(rng, lo, hi))
        .collect();
    Claim::new(m.tree(), payoff).unwrap()
}

/// Holdings obeying the short-sale constraint.
pub fn random_admissible_strategy(rng: &mut ChaCha8Rng, m: &MarketModel) -> Strategy {
    let d = m.shortable_count();
    Strategy::from_fn(m, |_| {
        (0..m.n_assets())
            .map(|i| {
                if i < d {
                    small_rational(rng, -3, 3)
                } else {
                    small_rational(rng, 0, 3)
                }
            })
            .collect()
    })
}

/// Holdings only in the shortable assets.
pub fn random_shortable_strategy(rng: &mut ChaCha8Rng, m: &MarketModel) -> Strategy {
    let d = m.shortable_count();
    Strategy::from_fn(m, |_| {
        (0..m.n_assets())
            .map(|i| {
                if i < d {
                    small_rational(rng, -3, 3)
                } else {
                    int(0)
                }
            })
            .collect()
    })
}

/// Strictly positive process on every node.
pub fn random_positive_process(rng: &mut ChaCha8Rng, m: &MarketModel) -> Vec<Rational> {
    (0..m.tree().len())
        .map(|_| ratio(rng.random_range(1..=6), rng.random_range(1..=3)))
        .collect()
}
