mod common;

use canalsym::canal::{radius_condition_poly, sym_canal, verify_conjugation, CanalSurface, SymmetryReport};
use canalsym::curves::apply_isometry;
use canalsym::group;
use canalsym::linalg::{identity, mat_mul, transpose};
use canalsym::mesh::normals;
use canalsym::moebius::Moebius;
use canalsym::ratpoly::{int, to_f64, RatFunc};
use common::*;
use rand::Rng;

fn compose(f: &RatFunc, m: &Moebius) -> RatFunc {
    let [a, b, c, d] = m.coeffs();
    f.compose_moebius(a, b, c, d)
}

fn check_report(s: &CanalSurface, rep: &SymmetryReport) {
    assert!(rep.contains_identity());
    assert!(rep.is_group());
    for sym in &rep.symmetries {
        let q = sym.isometry.q();
        assert_eq!(mat_mul(q, &transpose(q)), identity());
        assert!(verify_conjugation(&sym.isometry, &s.spine, &s.spine, &sym.moebius));
        let r2 = &s.radius * &s.radius;
        let rp = compose(&s.radius, &sym.moebius);
        assert_eq!(r2, &rp * &rp);
    }
}

#[test]
fn crunode_report_invariants() {
    let s = crunode_surface();
    let rep = sym_canal(&s).unwrap();
    assert_eq!(rep.len(), 4);
    check_report(&s, &rep);
}

#[test]
fn normals_transport_under_symmetries() {
    let s = crunode_surface();
    let rep = sym_canal(&s).unwrap();
    let mut g = rng(21);
    for sym in &rep.symmetries {
        let f = &sym.isometry;
        let moved = CanalSurface::new(apply_isometry(f, &s.spine).unwrap(), s.radius.clone());
        let q = f.q().clone().map(|row| row.map(|x| to_f64(&x)));
        let det = f.det_sign() as f64;
        let mut done = 0;
        while done < 10 {
            let t: f64 = g.gen_range(0.2..1.8);
            let sp: f64 = g.gen_range(-3.0..3.0);
            let (Ok(n), Ok(m)) = (normals(&s, t, sp), normals(&moved, t, det * sp)) else { continue };
            for i in 0..3 {
                let qn = q[i][0] * n[0] + q[i][1] * n[1] + q[i][2] * n[2];
                assert!((qn - m[i]).abs() < 1e-9);
            }
            done += 1;
        }
    }
}

#[test]
fn symmetries_are_equivariant() {
    let s = crunode_surface();
    let base = sym_canal(&s).unwrap();
    let mut rg = rng(22);
    for _ in 0..3 {
        let g = rand_isometry(&mut rg);
        let moved = s.transformed(&g).unwrap();
        let rep = sym_canal(&moved).unwrap();
        check_report(&moved, &rep);
        assert_eq!(rep.len(), base.len());
        for sym in &base.symmetries {
            let conj = sym.isometry.conjugate_by(&g);
            assert!(rep.isometries().iter().any(|x| group::same(x, &conj)));
        }
    }
}

#[test]
fn negative_control_has_only_identity() {
    let s = crunode_negative_control();
    let rep = sym_canal(&s).unwrap();
    assert_eq!(rep.len(), 1);
    assert!(rep.contains_identity());
    assert_eq!(rep.group_label, group::TRIVIAL);

    // Brute force over small integer Möbius maps: only u = t kills R.
    let big = radius_condition_poly(&s.radius, &s.radius);
    let range = -3..=3;
    let mut found = Vec::new();
    for a in range.clone() {
        for b in range.clone() {
            for c in range.clone() {
                for d in range.clone() {
                    if a * d == b * c {
                        continue;
                    }
                    let m = Moebius::from_ints(a, b, c, d).unwrap();
                    let sub = big.substitute_u_moebius(&int(a), &int(b), &int(c), &int(d));
                    if sub.is_zero() && !found.contains(&m) {
                        found.push(m);
                    }
                }
            }
        }
    }
    assert_eq!(found, vec![Moebius::identity()]);
}

#[test]
fn twisted_canal_keeps_prescribed_half_turn() {
    let s = twisted_surface();
    let rep = sym_canal(&s).unwrap();
    check_report(&s, &rep);
    assert!(rep.isometries().contains(&half_turn_y()));
}
