use canalsym::canal::radius_condition_poly;
use canalsym::moebius::{moebius_like_factors, Certainty, Moebius};
use canalsym::ratpoly::{bipoly_divides, int, rat, BiPoly, Rat, RatFunc, UniPoly};
use num_traits::Zero;
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

fn moebius() -> impl Strategy<Value = Moebius> {
    (-5i64..=5, -5i64..=5, -5i64..=5, -5i64..=5)
        .prop_filter("invertible", |(a, b, c, d)| a * d != b * c)
        .prop_map(|(a, b, c, d)| Moebius::from_ints(a, b, c, d).unwrap())
}

fn radius() -> impl Strategy<Value = RatFunc> {
    (
        prop::collection::vec(-6i64..=6, 1..4),
        prop::collection::vec(-6i64..=6, 1..4),
    )
        .prop_filter_map("proper radius", |(a, b)| {
            let r = RatFunc::new(&UniPoly::from_ints(&a), &UniPoly::from_ints(&b)).ok()?;
            (!r.is_constant()).then_some(r)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn diagonal_radius_condition_has_identity_factor(r in radius()) {
        let big = radius_condition_poly(&r, &r);
        prop_assert!(!big.is_zero());
        let diag = BiPoly::from_terms([((0, 1), int(1)), ((1, 0), int(-1))]);
        prop_assert!(bipoly_divides(&diag, &big));
        let factors = moebius_like_factors(&big).unwrap();
        prop_assert!(factors.iter().any(|f| f.moebius.is_identity()));
        for f in &factors {
            if f.certainty == Certainty::Exact {
                prop_assert!(bipoly_divides(&f.bilinear, &big));
            }
        }
    }

    #[test]
    fn equality_is_projective(m in moebius(), k in small_rat().prop_filter("nonzero", |k| !k.is_zero())) {
        let [a, b, c, d] = m.coeffs().map(|x| x * &k);
        prop_assert_eq!(Moebius::new(a, b, c, d).unwrap(), m);
    }

    #[test]
    fn planted_factor_is_recovered(
        m in moebius(),
        terms in prop::collection::vec(((0u32..=2, 0u32..=2), -7i64..=7), 2..6),
    ) {
        let g = BiPoly::from_terms(terms.into_iter().map(|(k, v)| (k, int(v))));
        prop_assume!(!g.is_zero());
        let r = &m.to_bilinear() * &g;
        let factors = moebius_like_factors(&r).unwrap();
        prop_assert!(factors.iter().any(|f| f.moebius == m));
        for f in factors.iter().filter(|f| f.certainty == Certainty::Exact) {
            prop_assert!(bipoly_divides(&f.bilinear, &r));
        }
    }
}
