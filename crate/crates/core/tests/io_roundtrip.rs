//! JSON round trips on random markets.

mod common;

use proptest::prelude::*;

use shortsale::io;

use common::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn model_claim_strategy_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_market(&mut r);
        let back = io::model_from_json(&io::model_to_json(&m).unwrap()).unwrap();
        prop_assert_eq!(&back, &m);
        let f = random_claim(&mut r, &m, -3, 5);
        let text = io::claim_to_json(m.tree(), &f).unwrap();
        prop_assert_eq!(io::claim_from_json(m.tree(), &text).unwrap(), f);
        let h = random_admissible_strategy(&mut r, &m);
        let text = io::strategy_to_json(&h).unwrap();
        prop_assert_eq!(io::strategy_from_json(m.tree(), m.n_assets(), &text).unwrap(), h);
    }
}
