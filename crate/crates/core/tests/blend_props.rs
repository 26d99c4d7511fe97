mod common;

use canalsym::blend::{hermite_radius, symmetric_blend, symmetric_radius_coeffs, BezierScalar};
use canalsym::canal::{sym_canal, verify_conjugation, CanalSurface};
use canalsym::curves::{apply_isometry, derivative, rv_eval};
use canalsym::error::Error;
use canalsym::moebius::Moebius;
use canalsym::ratpoly::{int, rat, Rat, RatFunc, UniPoly};
use common::*;
use proptest::prelude::*;

fn one_minus_t() -> UniPoly {
    UniPoly::from_ints(&[1, -1])
}

/// `r²(t) - r²(1 - t)` computed in the power basis.
fn square_defect(r: &UniPoly) -> UniPoly {
    let s = r.compose(&one_minus_t());
    &(r * r) - &(&s * &s)
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn patterned_coefficients_give_symmetric_squares(
        n in 0usize..=6,
        free in prop::collection::vec(small_rat(), 4),
    ) {
        let half = (n + 2) / 2;
        let r = symmetric_radius_coeffs(n, &free[..half]).unwrap();
        prop_assert!(r.has_symmetric_pattern());
        prop_assert!(square_defect(&r.to_poly()).is_zero());
    }

    #[test]
    fn symmetric_squares_force_the_pattern(
        n in 1usize..=6,
        coeffs in prop::collection::vec(small_rat(), 7),
    ) {
        let a = coeffs[..=n].to_vec();
        let r = BezierScalar::new(a.clone()).unwrap();
        let poly = r.to_poly();
        let even = (0..=n).all(|i| a[i] == a[n - i]);
        let odd = (0..=n).all(|i| a[i] == -a[n - i].clone());
        prop_assert_eq!(square_defect(&poly).is_zero(), even || odd);
        if poly.degree() == Some(n) && square_defect(&poly).is_zero() {
            prop_assert!(r.has_symmetric_pattern());
        }
    }
}

fn jets_match(a: &CanalSurface, ta: &Rat, b: &CanalSurface, tb: &Rat, order: usize) -> bool {
    (0..=order).all(|k| {
        rv_eval(&derivative(&a.spine, k), ta).unwrap() == rv_eval(&derivative(&b.spine, k), tb).unwrap()
            && a.radius.nth_derivative(k).eval(ta).unwrap() == b.radius.nth_derivative(k).eval(tb).unwrap()
    })
}

/// `S₂ = f(S₁)` traversed backwards, so that `f` exchanges the junctions.
fn mirrored(s1: &CanalSurface, t1: &Rat, t2: &Rat, f: &canalsym::isometry::Isometry) -> CanalSurface {
    let back = Moebius::new(int(-1), t1 + t2, int(0), int(1)).unwrap();
    let spine = apply_isometry(f, &s1.spine.compose_moebius(&back)).unwrap();
    let [a, b, c, d] = back.coeffs();
    CanalSurface::new(spine, s1.radius.compose_moebius(a, b, c, d))
}

#[test]
fn symmetric_blends_are_invariant_and_smooth() {
    let mut g = rng(90);
    let base = [crunode_surface(), twisted_surface()];
    let reverse = Moebius::from_ints(-1, 1, 0, 1).unwrap();
    for (i, s1) in base.iter().enumerate() {
        for order in 0..=3 {
            let f = rand_involution(&mut g);
            let (t1, t2) = (rat(1 + i as i64, 3), rat(-2, 5));
            let s2 = mirrored(s1, &t1, &t2, &f);
            let b = symmetric_blend(s1, &t1, &s2, &t2, &f, order).unwrap();
            assert_eq!(b.spine.degree(), 2 * order + 1);
            assert!(b.spine.polygon_reversed_by(&f));
            assert!(verify_conjugation(&f, &b.surface.spine, &b.surface.spine, &reverse));
            let r = b.radius.radius.to_poly();
            let sigma = int(b.radius.symmetry_sign.unwrap() as i64);
            assert_eq!(r.compose(&one_minus_t()), r.scale(&sigma));
            assert!(jets_match(s1, &t1, &b.surface, &int(0), order));
            assert!(jets_match(&s2, &t2, &b.surface, &int(1), order));
        }
    }
}

#[test]
fn twisted_patch_replacement() {
    let s1 = twisted_surface();
    let s2 = CanalSurface::new(s1.spine.clone(), s1.radius.scale(&int(-1)));
    let b = symmetric_blend(&s1, &int(0), &s2, &int(1), &half_turn_y(), 1).unwrap();
    assert_eq!(b.radius.radius.coefficients, vec![rat(-1, 2), int(0), rat(-1, 2)]);
    assert_eq!(b.radius.symmetry_sign, Some(1));
    // Same sphere family as t² - t + 1/2 with the opposite orientation.
    let want = UniPoly::new(vec![rat(1, 2), int(-1), int(1)]);
    assert_eq!(b.radius.radius.to_poly(), want.scale(&int(-1)));
    let rep = sym_canal(&b.surface).unwrap();
    assert!(rep.isometries().contains(&half_turn_y()));
}

#[test]
fn incompatible_data_is_reported_with_its_order() {
    let s1 = twisted_surface();
    let s2 = CanalSurface::new(s1.spine.clone(), RatFunc::constant(rat(-1, 2)));
    match symmetric_blend(&s1, &int(0), &s2, &int(1), &half_turn_y(), 1) {
        Err(Error::SymmetryIncompatible { order, .. }) => assert_eq!(order, 1),
        other => panic!("unexpected {other:?}"),
    }
    let (c1, c2) = cylinders();
    match symmetric_blend(&c1, &int(0), &c2, &int(1), &half_turn_y(), 1) {
        Err(Error::SymmetryIncompatible { order, .. }) => assert_eq!(order, 0),
        other => panic!("unexpected {other:?}"),
    }
    let screw = canalsym::isometry::Isometry::new(
        rand_orthogonal(&mut rng(91)),
        [int(1), int(0), int(0)],
    )
    .unwrap();
    let s3 = mirrored(&s1, &int(0), &int(1), &screw);
    if screw.compose(&screw) != canalsym::isometry::Isometry::identity() {
        assert!(matches!(
            symmetric_blend(&s1, &int(0), &s3, &int(1), &screw, 1),
            Err(Error::SymmetryIncompatible { order: 0, .. })
        ));
    }
    let e = hermite_radius(&RatFunc::constant(int(1)), &int(0), &RatFunc::t(), &int(0), 0, true);
    assert!(matches!(e, Err(Error::InconsistentConstraint(_))));
}
