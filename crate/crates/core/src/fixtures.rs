//! Small hand-built markets shared by unit tests.

use crate::market::{MarketModel, TreeBuilder};
use crate::rational::{int, ratio, Rational};

/// One period, one asset, equally likely children with the given prices;
/// `prices[0]` is the root price.
pub(crate) fn one_period(prices: &[Rational], shortable: usize) -> MarketModel {
    let mut b = TreeBuilder::new();
    let k = prices.len() as i64 - 1;
    for _ in 0..k {
        b.child(0, ratio(1, k));
    }
    let tree = b.build().unwrap();
    let ps = prices.iter().map(|p| vec![p.clone()]).collect();
    MarketModel::new(tree, ps, shortable).unwrap()
}

/// `S_0 = 1`, up 2, down 1/2, no short sales.
pub(crate) fn binomial_1() -> MarketModel {
    one_period(&[int(1), int(2), ratio(1, 2)], 0)
}
