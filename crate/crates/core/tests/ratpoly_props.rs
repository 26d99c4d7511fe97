use canalsym::ratpoly::{
    bipoly_divides, normalize_ratfunc, parse_rat, format_rat, pow2, rat, real_roots, BiPoly, Rat, UniPoly,
};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

fn poly(max_deg: usize) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(small_rat(), 1..=max_deg + 1).prop_map(UniPoly::new)
}

fn bipoly(max_deg: u32) -> impl Strategy<Value = BiPoly> {
    prop::collection::vec(((0..=max_deg, 0..=max_deg), small_rat()), 1..6).prop_map(BiPoly::from_terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalized_quotient_evaluates_like_the_fraction(
        a in poly(4),
        b in poly(4).prop_filter("nonzero", |b| !b.is_zero()),
        xs in prop::collection::vec(small_rat(), 20),
    ) {
        let r = normalize_ratfunc(&a, &b).unwrap();
        prop_assert!(r.den().lc().is_one());
        for x in xs {
            let d = b.eval(&x);
            if d.is_zero() {
                continue;
            }
            prop_assert_eq!(r.eval(&x).unwrap(), a.eval(&x) / d);
        }
    }

    #[test]
    fn bivariate_division_composes(
        f in bipoly(2).prop_filter("nonzero", |f| !f.is_zero()),
        g in bipoly(2).prop_filter("nonzero", |g| !g.is_zero()),
        h in bipoly(1),
    ) {
        let r = &(&f * &g) * &h;
        prop_assert!(bipoly_divides(&f, &r));
        let rf = r.div_exact(&f).unwrap();
        prop_assert!(bipoly_divides(&g, &rf));
        let rest = r.div_exact(&(&f * &g)).unwrap();
        prop_assert_eq!(&(&f * &g) * &rest, r);
    }

    #[test]
    fn isolated_roots_bracket_sign_changes(
        mut roots in prop::collection::vec(-12i64..=12, 1..5),
        double in any::<bool>(),
        den in 1i64..=4,
    ) {
        roots.sort();
        roots.dedup();
        let mut p = UniPoly::from_ints(&[1, 0, 1]);
        for r in &roots {
            p = &p * &UniPoly::new(vec![-rat(*r, den), Rat::one()]);
        }
        if double {
            let extra = UniPoly::new(vec![-rat(roots[0], den), Rat::one()]);
            p = &p * &extra;
        }
        let iso = real_roots(&p, &pow2(-30)).unwrap();
        prop_assert_eq!(iso.len(), roots.len());
        for (root, r) in iso.iter().zip(&roots) {
            let x = rat(*r, den);
            prop_assert!(root.lo() <= &x && &x <= root.hi());
            if root.multiplicity() % 2 == 1 && !root.is_exact() {
                let (a, b) = (p.eval(root.lo()), p.eval(root.hi()));
                prop_assert!(a.is_negative() != b.is_negative());
            }
        }
    }

    #[test]
    fn rationals_print_and_parse(x in small_rat()) {
        prop_assert_eq!(parse_rat(&format_rat(&x)).unwrap(), x);
    }
}
