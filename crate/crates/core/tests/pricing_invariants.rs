//! Structural properties of super-replication prices on random markets.

mod common;

use proptest::prelude::*;

use shortsale::hedging::{superreplication_price_lp, superreplication_price_shifted};
use shortsale::market::stochastic_integral;
use shortsale::measures::{drift, process_trend, Trend};
use shortsale::rational::{int, ratio};
use shortsale::{esmm_feasibility, price_process, superhedge, superreplication_price};

use common::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn positive_homogeneity_and_cash_translation(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_arbitrage_free_market(&mut r);
        let f = random_claim(&mut r, &m, 0, 6);
        let p = superreplication_price(&m, &f).unwrap().value;
        let scaled = shortsale::Claim::new(m.tree(), f.payoff.iter().map(|x| x * ratio(5, 2)).collect()).unwrap();
        prop_assert_eq!(superreplication_price(&m, &scaled).unwrap().value, &p * ratio(5, 2));
        let c = ratio(7, 3);
        prop_assert_eq!(superreplication_price(&m, &f.shifted(&c)).unwrap().value, &p + &c);
        prop_assert_eq!(superreplication_price_shifted(&m, &f.shifted(&-c.clone())).unwrap().value, &p - &c);
    }

    #[test]
    fn subadditive_and_bounded_by_payoff_range(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_arbitrage_free_market(&mut r);
        let f = random_claim(&mut r, &m, 0, 6);
        let g = random_claim(&mut r, &m, 0, 6);
        let sum = shortsale::Claim::new(m.tree(), f.payoff.iter().zip(&g.payoff).map(|(a, b)| a + b).collect()).unwrap();
        let (pf, pg) = (superreplication_price(&m, &f).unwrap().value, superreplication_price(&m, &g).unwrap().value);
        prop_assert!(superreplication_price(&m, &sum).unwrap().value <= &pf + &pg);
        prop_assert!(pf <= f.max() && pf >= f.min());
    }

    #[test]
    fn allowing_short_sales_never_raises_the_price(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_arbitrage_free_market(&mut r);
        let f = random_claim(&mut r, &m, 0, 6);
        let p = superreplication_price(&m, &f).unwrap().value;
        for d in m.shortable_count() + 1..=m.n_assets() {
            let more = m.with_shortable_count(d).unwrap();
            if esmm_feasibility(&more).unwrap().is_some() {
                prop_assert!(superreplication_price(&more, &f).unwrap().value <= p);
            }
        }
    }

    #[test]
    fn backward_pass_matches_whole_tree_program(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_arbitrage_free_market(&mut r);
        let f = random_claim(&mut r, &m, 0, 6);
        let dp = superreplication_price(&m, &f).unwrap();
        let lp = superreplication_price_lp(&m, &f).unwrap();
        prop_assert_eq!(&dp.value, &lp.value);
        prop_assert_eq!(dp.attained_by_equivalent, lp.attained_by_equivalent);
        prop_assert_eq!(dp.witness_measure.is_equivalent(), dp.attained_by_equivalent);
    }

    #[test]
    fn price_process_dominates_one_step_expectations(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_arbitrage_free_market(&mut r);
        let f = random_claim(&mut r, &m, 0, 6);
        let v = price_process(&m, &f).unwrap();
        let q = esmm_feasibility(&m).unwrap().unwrap();
        prop_assert_ne!(process_trend(m.tree(), &q, &v.values), Trend::Neither);
        for n in m.tree().internal_nodes() {
            prop_assert!(drift(m.tree(), &q, &v.values, n).unwrap() <= int(0));
        }
        // hedge wealth x + (H·S) - C follows the price process
        let h = superhedge(&m, &f).unwrap();
        let g = stochastic_integral(&m, &h.strategy).unwrap();
        for n in 0..m.tree().len() {
            prop_assert!(&h.x + &g.values[n] - &h.consumption.cumulative[n] >= int(0));
        }
    }

    #[test]
    fn admissible_gains_are_esmm_supermartingales(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_arbitrage_free_market(&mut r);
        let q = esmm_feasibility(&m).unwrap().unwrap();
        let h = random_admissible_strategy(&mut r, &m);
        let g = stochastic_integral(&m, &h).unwrap();
        prop_assert_ne!(process_trend(m.tree(), &q, &g.values), Trend::Neither);
        let s = random_shortable_strategy(&mut r, &m);
        let g = stochastic_integral(&m, &s).unwrap();
        prop_assert_eq!(process_trend(m.tree(), &q, &g.values), Trend::Martingale);
    }
}
