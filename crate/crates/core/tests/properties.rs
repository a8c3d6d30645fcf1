//! Randomized properties of the inner products.

mod common;

use common::*;
use proptest::prelude::*;
use sobolex::sobolev::{D2Named, InnerProductSpec, Lambdas};
use sobolex::{MultiIndex, ParamVector, Polynomial, Rational};

fn arb_poly(d: usize, max_deg: u32) -> impl Strategy<Value = Polynomial> {
    let n = MultiIndex::all_up_to_degree(d, max_deg).len();
    proptest::collection::vec((-4i64..5, 1i64..4), n).prop_map(move |cs| {
        let terms = MultiIndex::all_up_to_degree(d, max_deg)
            .into_iter()
            .zip(cs)
            .map(|(m, (p, q))| (m, r(p, q)));
        Polynomial::from_terms(d, terms).unwrap()
    })
}

fn arb_rat() -> impl Strategy<Value = Rational> {
    (-5i64..6, 1i64..4).prop_map(|(p, q)| r(p, q))
}

fn specs(d: usize) -> Vec<InnerProductSpec> {
    let mut out = vec![
        InnerProductSpec::classical(ParamVector::new(vec![r(1, 2); d + 1]).unwrap()),
        InnerProductSpec::epd(ParamVector::zeros(d), d, Lambdas::ones()),
    ];
    for k in 1..=d + 1 {
        out.push(InnerProductSpec::sobolev(d, vec![r(1, 3); d + 1 - k], k, Lambdas::ones()).unwrap());
    }
    if d == 2 {
        out.push(InnerProductSpec::d2_named(D2Named::AllM1 {
            lambda1: ri(1),
            lambda2: ri(2),
            lambda10: ri(1),
            lambda01: r(1, 2),
            lambda00: ri(0),
        }));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn symmetric_and_bilinear(
        (d, f, g, h) in (2usize..=3).prop_flat_map(|d| (Just(d), arb_poly(d, 3), arb_poly(d, 3), arb_poly(d, 2))),
        a in arb_rat(),
    ) {
        for spec in specs(d) {
            let fg = spec.inner(&f, &g).unwrap();
            prop_assert_eq!(&fg, &spec.inner(&g, &f).unwrap());
            let lhs = spec.inner(&(&f.scale(&a) + &h), &g).unwrap();
            let rhs = &a * &fg + spec.inner(&h, &g).unwrap();
            prop_assert_eq!(lhs, rhs);
            if !f.is_zero() {
                prop_assert!(spec.inner(&f, &f).unwrap() > Rational::from_integer(0.into()));
            }
        }
    }

    #[test]
    fn classical_product_matches_oracle(f in arb_poly(2, 3), g in arb_poly(2, 2), a in 0i64..4, b in 0i64..4) {
        let gamma = vec![ri(a), r(1, 2), ri(b)];
        let lib = sobolex::moments::inner_product(&f, &g, &ParamVector::new(gamma.clone()).unwrap()).unwrap();
        prop_assert_eq!(lib, oracle_inner(&f, &g, &gamma));
    }
}
