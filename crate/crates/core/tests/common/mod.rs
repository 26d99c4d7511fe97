#![allow(dead_code)]

use canalsym::blend::BezierCurve3;
use canalsym::canal::CanalSurface;
use canalsym::curves::SpaceCurve;
use canalsym::isometry::Isometry;
use canalsym::linalg::{identity, inverse, mat_mul, Mat3, Vec3};
use canalsym::moebius::Moebius;
use canalsym::ratpoly::{int, rat, Rat, RatFunc, UniPoly};
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn p(c: &[i64]) -> UniPoly {
    UniPoly::from_ints(c)
}

pub fn rf(num: &[i64], den: &[i64]) -> RatFunc {
    RatFunc::new(&p(num), &p(den)).unwrap()
}

/// `(t, t², t³) / (1 + t⁴)`.
pub fn crunode() -> SpaceCurve {
    SpaceCurve::from_common_den([p(&[0, 1]), p(&[0, 0, 1]), p(&[0, 0, 0, 1])], &p(&[1, 0, 0, 0, 1])).unwrap()
}

pub fn crunode_surface() -> CanalSurface {
    CanalSurface::new(crunode(), rf(&[0, 0, 1], &[1, 0, 0, 0, 1]))
}

pub fn crunode_negative_control() -> CanalSurface {
    CanalSurface::new(crunode(), rf(&[1, 1, 0, 1], &[1, 0, 0, 0, 1]))
}

pub fn cylinders() -> (CanalSurface, CanalSurface) {
    let c1 = SpaceCurve::from_polys(p(&[0]), p(&[0]), p(&[1, -2])).unwrap();
    let c2 = SpaceCurve::from_polys(p(&[0]), p(&[-1, 2]), p(&[0])).unwrap();
    (
        CanalSurface::new(c1, RatFunc::constant(rat(1, 2))),
        CanalSurface::new(c2, RatFunc::constant(rat(1, 4))),
    )
}

/// Twisted cubic as a Bézier curve on `[0, 1]` whose control polygon is
/// reversed by the half-turn about the y-axis.
pub fn twisted_bezier() -> BezierCurve3 {
    let third = |n: i64| rat(n, 3);
    BezierCurve3::new(vec![
        [int(-1), int(1), int(-1)],
        [third(-1), third(-1), int(1)],
        [third(1), third(-1), int(-1)],
        [int(1), int(1), int(1)],
    ])
    .unwrap()
}

pub fn twisted_surface() -> CanalSurface {
    CanalSurface::new(twisted_bezier().to_curve(), RatFunc::poly(UniPoly::new(vec![rat(-1, 2), int(1)])))
}

pub fn half_turn_y() -> Isometry {
    Isometry::linear(canalsym::linalg::diag(-1, 1, -1)).unwrap()
}

pub fn rand_rat(rng: &mut StdRng, num: i64, den: i64) -> Rat {
    rat(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

pub fn rand_point(rng: &mut StdRng) -> Vec3 {
    [0, 1, 2].map(|_| rand_rat(rng, 9, 7))
}

/// Exact rational rotation by the Cayley transform of a random skew
/// matrix, with a random sign for improper isometries.
pub fn rand_orthogonal(rng: &mut StdRng) -> Mat3 {
    let mut v = [0i64; 3];
    for x in &mut v {
        *x = rng.gen_range(-3..=3);
    }
    let [a, b, c] = v.map(int);
    let z = Rat::zero();
    let skew: Mat3 = [
        [z.clone(), -c.clone(), b.clone()],
        [c.clone(), z.clone(), -a.clone()],
        [-b, a, z],
    ];
    let id = identity();
    let minus: Mat3 = std::array::from_fn(|i| std::array::from_fn(|j| &id[i][j] - &skew[i][j]));
    let plus: Mat3 = std::array::from_fn(|i| std::array::from_fn(|j| &id[i][j] + &skew[i][j]));
    let q = mat_mul(&minus, &inverse(&plus).unwrap());
    if rng.gen_bool(0.5) {
        q.map(|row| row.map(|x| -x))
    } else {
        q
    }
}

pub fn rand_isometry(rng: &mut StdRng) -> Isometry {
    let q = rand_orthogonal(rng);
    let b = [0, 1, 2].map(|_| rand_rat(rng, 5, 3));
    Isometry::new(q, b).unwrap()
}

/// Reflection in a random plane, half-turn about a random line, or the
/// central symmetry about a random point.
pub fn rand_involution(rng: &mut StdRng) -> Isometry {
    let n = loop {
        let v = [0, 1, 2].map(|_| int(rng.gen_range(-3..=3)));
        if v.iter().any(|x| !x.is_zero()) {
            break v;
        }
    };
    let k = int(2) / canalsym::linalg::norm_sq(&n);
    let id = identity();
    let refl: Mat3 = std::array::from_fn(|i| std::array::from_fn(|j| &id[i][j] - &k * &n[i] * &n[j]));
    let q = match rng.gen_range(0..3) {
        0 => refl,
        1 => refl.map(|row| row.map(|x| -x)),
        _ => id.map(|row| row.map(|x| -x)),
    };
    let x0 = rand_point(rng);
    let qx = canalsym::linalg::mat_vec(&q, &x0);
    Isometry::new(q, canalsym::linalg::sub(&x0, &qx)).unwrap()
}

pub fn rand_moebius(rng: &mut StdRng) -> Moebius {
    loop {
        let c: Vec<Rat> = (0..4).map(|_| int(rng.gen_range(-4..=4))).collect();
        if (&c[0] * &c[3] - &c[1] * &c[2]).is_zero() {
            continue;
        }
        return Moebius::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()).unwrap();
    }
}

pub fn rat_of(x: &Rat) -> Rat {
    x.clone()
}

pub fn one() -> Rat {
    Rat::one()
}
