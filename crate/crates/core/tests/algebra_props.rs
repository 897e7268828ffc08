use isoparam_core::algebra::{rat, Monomial, MultiPoly, RatFunc, Rational};
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((coeff(), prop::array::uniform4(0u32..=3)), 0..6)
        .prop_map(|terms| MultiPoly::from_terms(terms.into_iter().map(|(c, e)| (Monomial(e), c))))
}

fn point() -> impl Strategy<Value = [Rational; 4]> {
    prop::array::uniform4((-50i64..=50, 1i64..=9).prop_map(|(n, d)| rat(n, d)))
}

fn nonzero_poly() -> impl Strategy<Value = MultiPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(), b in poly(), x in point()) {
        prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
        prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
    }

    #[test]
    fn text_round_trip(a in poly()) {
        let text = a.to_string();
        let back: MultiPoly = text.parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn rf_equal_ignores_common_factors(a in poly(), b in nonzero_poly(), k in nonzero_poly()) {
        let plain = RatFunc::frac(a.clone(), b.clone());
        let scaled = RatFunc::frac(&a * &k, &b * &k);
        prop_assert!(plain.rf_equal(&scaled));
    }

    #[test]
    fn exact_division_recovers_factor(a in nonzero_poly(), b in nonzero_poly()) {
        let prod = &a * &b;
        prop_assert_eq!(prod.div_exact(&b), Some(a));
    }

    #[test]
    fn ratfunc_field_ops_commute_with_eval(a in poly(), b in nonzero_poly(), c in poly(), d in nonzero_poly(), x in point()) {
        let f = RatFunc::frac(a, b);
        let g = RatFunc::frac(c, d);
        if let (Some(fv), Some(gv)) = (f.eval(&x), g.eval(&x)) {
            prop_assert_eq!((&f + &g).eval(&x), Some(&fv + &gv));
            prop_assert_eq!((&f * &g).eval(&x), Some(&fv * &gv));
        }
    }

    #[test]
    fn t_derivative_is_linear_and_leibniz(a in poly(), b in poly()) {
        prop_assert_eq!((&a + &b).diff_t(), &a.diff_t() + &b.diff_t());
        prop_assert_eq!((&a * &b).diff_t(), &(&a.diff_t() * &b) + &(&a * &b.diff_t()));
    }
}
