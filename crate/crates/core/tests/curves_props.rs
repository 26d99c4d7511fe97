mod common;

use canalsym::curves::{apply_isometry, derivative, kappa_sq, rv_dot, torsion, Frenet, SpaceCurve};
use canalsym::isometry::Isometry;
use canalsym::moebius::Moebius;
use canalsym::ratpoly::{to_f64, RatFunc};
use common::*;
use rand::Rng;

fn compose(f: &RatFunc, m: &Moebius) -> RatFunc {
    let [a, b, c, d] = m.coeffs();
    f.compose_moebius(a, b, c, d)
}

fn curves() -> Vec<SpaceCurve> {
    vec![
        crunode(),
        SpaceCurve::from_polys(p(&[0, 1]), p(&[0, 0, 1]), p(&[0, 0, 0, 1])).unwrap(),
        twisted_bezier().to_curve(),
    ]
}

fn q_f64(f: &Isometry) -> [[f64; 3]; 3] {
    f.q().clone().map(|row| row.map(|x| to_f64(&x)))
}

fn mul(q: &[[f64; 3]; 3], v: [f64; 3]) -> [f64; 3] {
    [0, 1, 2].map(|i| q[i][0] * v[0] + q[i][1] * v[1] + q[i][2] * v[2])
}

#[test]
fn frenet_frames_transport() {
    let mut g = rng(11);
    for c in curves() {
        for _ in 0..3 {
            let f = rand_isometry(&mut g);
            let fc = apply_isometry(&f, &c).unwrap();
            let (a, b) = (Frenet::new(&c), Frenet::new(&fc));
            let q = q_f64(&f);
            let det = f.det_sign() as f64;
            for _ in 0..10 {
                let t: f64 = g.gen_range(-2.0..2.0);
                let (Ok(fr), Ok(tr)) = (a.frame(t), b.frame(t)) else { continue };
                for k in 0..3 {
                    let s = if k == 2 { det } else { 1.0 };
                    let want = mul(&q, fr[k]).map(|x| s * x);
                    for i in 0..3 {
                        assert!((want[i] - tr[k][i]).abs() < 1e-9);
                    }
                }
            }
        }
    }
}

#[test]
fn isometries_keep_speed_and_curvature() {
    let mut g = rng(12);
    for c in curves() {
        let f = rand_isometry(&mut g);
        let fc = apply_isometry(&f, &c).unwrap();
        let v = derivative(&c, 1);
        let w = derivative(&fc, 1);
        assert_eq!(rv_dot(&v, &v), rv_dot(&w, &w));
        assert_eq!(kappa_sq(&c).unwrap(), kappa_sq(&fc).unwrap());
        let tau = torsion(&c).unwrap();
        assert_eq!(torsion(&fc).unwrap(), tau.scale(&canalsym::ratpoly::int(f.det_sign() as i64)));
    }
}

#[test]
fn curvature_and_torsion_follow_reparametrization() {
    let mut g = rng(13);
    for c in curves() {
        let k = kappa_sq(&c).unwrap();
        let tau = torsion(&c).unwrap();
        for _ in 0..20 {
            let m = rand_moebius(&mut g);
            let cm = c.compose_moebius(&m);
            assert_eq!(kappa_sq(&cm).unwrap(), compose(&k, &m));
            assert_eq!(torsion(&cm).unwrap(), compose(&tau, &m));
        }
    }
}
