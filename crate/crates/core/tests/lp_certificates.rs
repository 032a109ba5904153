//! Every solver outcome on random small programs carries a certificate that
//! checks out in exact arithmetic.

use proptest::prelude::*;

use shortsale::lp::{self, LinearProgram, LpStatus, Relation, VarBound};
use shortsale::rational::{int, Rational};

fn relation(k: u8) -> Relation {
    match k % 3 {
        0 => Relation::Le,
        1 => Relation::Eq,
        _ => Relation::Ge,
    }
}

fn build(
    n: usize,
    rows: &[(Vec<i64>, u8, i64)],
    obj: &[i64],
    free: &[bool],
    max: bool,
) -> LinearProgram {
    let mut lp = LinearProgram::new(n);
    for (coef, rel, rhs) in rows {
        lp.add_constraint(
            coef.iter().map(|&c| int(c)).collect(),
            relation(*rel),
            int(*rhs),
        );
    }
    for (j, &f) in free.iter().enumerate() {
        if f {
            lp.bounds[j] = VarBound::Free;
        }
    }
    let c: Vec<Rational> = obj.iter().map(|&c| int(c)).collect();
    if max {
        lp.maximize(c);
    } else {
        lp.minimize(c);
    }
    lp
}

fn program() -> impl Strategy<Value = LinearProgram> {
    (1usize..=4, 0usize..=4).prop_flat_map(|(n, m)| {
        (
            prop::collection::vec((prop::collection::vec(-3i64..=3, n), 0u8..3, -4i64..=4), m),
            prop::collection::vec(-3i64..=3, n),
            prop::collection::vec(prop::bool::weighted(0.25), n),
            any::<bool>(),
        )
            .prop_map(move |(rows, obj, free, max)| build(n, &rows, &obj, &free, max))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn outcome_certificates_verify(lp in program()) {
        let out = lp::solve(&lp).unwrap();
        prop_assert_eq!(out.verify(&lp), Ok(()));
        prop_assert_eq!(lp::solve(&lp).unwrap(), out);
    }

    #[test]
    fn strict_point_is_strict_and_feasible(lp in program()) {
        let all: Vec<usize> = (0..lp.num_vars()).collect();
        if let Some(x) = lp::strict_interior_point(&lp, &all).unwrap() {
            prop_assert!(lp.is_feasible(&x));
            prop_assert!(x.iter().all(|v| *v > int(0)));
        } else {
            // no strictly positive point: adding x_j >= eps for a tiny eps must be infeasible
            let mut tight = lp.clone();
            for j in 0..lp.num_vars() {
                let mut row = vec![int(0); lp.num_vars()];
                row[j] = int(1);
                tight.add_constraint(row, Relation::Ge, Rational::new(1.into(), 1_000_000.into()));
            }
            prop_assert_eq!(lp::solve(&tight).unwrap().status, LpStatus::Infeasible);
        }
    }
}
