//! Rational space curves and their differential invariants.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::Vec3;
use crate::moebius::{moebius_like_factors, vanishes_on, Moebius};
use crate::ratpoly::{BiPoly, Rat, RatFunc, UniPoly};

pub use crate::isometry::Isometry;

/// Vector of three rational functions.
pub type RatVec = [RatFunc; 3];

/// `t -> (x(t), y(t), z(t))` with rational components.
///
/// Properness (injectivity away from finitely many parameters) is assumed
/// and not checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceCurve {
    comps: RatVec,
}

impl SpaceCurve {
    pub fn new(x: RatFunc, y: RatFunc, z: RatFunc) -> Result<Self> {
        if x.is_constant() && y.is_constant() && z.is_constant() {
            return Err(Error::DegenerateInput("curve is a single point".into()));
        }
        Ok(Self { comps: [x, y, z] })
    }

    /// Components `num_i / den`.
    pub fn from_common_den(num: [UniPoly; 3], den: &UniPoly) -> Result<Self> {
        let [x, y, z] = num;
        Self::new(RatFunc::new(&x, den)?, RatFunc::new(&y, den)?, RatFunc::new(&z, den)?)
    }

    pub fn from_polys(x: UniPoly, y: UniPoly, z: UniPoly) -> Result<Self> {
        Self::new(x.into(), y.into(), z.into())
    }

    pub fn components(&self) -> &RatVec {
        &self.comps
    }

    pub fn component(&self, i: usize) -> &RatFunc {
        &self.comps[i]
    }

    pub fn eval(&self, t: &Rat) -> Result<Vec3> {
        Ok([
            self.comps[0].eval(t)?,
            self.comps[1].eval(t)?,
            self.comps[2].eval(t)?,
        ])
    }

    pub fn eval_f64(&self, t: f64) -> [f64; 3] {
        [
            self.comps[0].eval_f64(t),
            self.comps[1].eval_f64(t),
            self.comps[2].eval_f64(t),
        ]
    }

    /// `c ∘ φ`.
    pub fn compose_moebius(&self, phi: &Moebius) -> SpaceCurve {
        let [a, b, c, d] = phi.coeffs();
        SpaceCurve {
            comps: self.comps.clone().map(|f| f.compose_moebius(a, b, c, d)),
        }
    }

    /// Max degree of the component numerators and denominators.
    pub fn degree(&self) -> usize {
        self.comps.iter().map(RatFunc::degree).max().unwrap_or(0)
    }

    /// `‖ċ‖²`.
    pub fn speed_sq(&self) -> RatFunc {
        let d = derivative(self, 1);
        rv_dot(&d, &d)
    }

    /// Whether `ċ × c̈` vanishes identically.
    pub fn is_linear(&self) -> bool {
        let d1 = derivative(self, 1);
        let d2 = derivative(self, 2);
        rv_cross(&d1, &d2).iter().all(RatFunc::is_zero)
    }
}

pub fn rv_dot(a: &RatVec, b: &RatVec) -> RatFunc {
    &(&(&a[0] * &b[0]) + &(&a[1] * &b[1])) + &(&a[2] * &b[2])
}

pub fn rv_cross(a: &RatVec, b: &RatVec) -> RatVec {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

pub fn rv_eval(v: &RatVec, t: &Rat) -> Result<Vec3> {
    Ok([v[0].eval(t)?, v[1].eval(t)?, v[2].eval(t)?])
}

pub fn rv_eval_f64(v: &RatVec, t: f64) -> [f64; 3] {
    [v[0].eval_f64(t), v[1].eval_f64(t), v[2].eval_f64(t)]
}

/// Componentwise `k`-th derivative.
pub fn derivative(c: &SpaceCurve, k: usize) -> RatVec {
    c.comps.clone().map(|f| f.nth_derivative(k))
}

/// `κ² = ‖ċ × c̈‖² / ‖ċ‖⁶`.
pub fn kappa_sq(c: &SpaceCurve) -> Result<RatFunc> {
    let d1 = derivative(c, 1);
    let d2 = derivative(c, 2);
    let w = rv_cross(&d1, &d2);
    if w.iter().all(RatFunc::is_zero) {
        return Err(Error::LinearSpine);
    }
    let s = rv_dot(&d1, &d1);
    Ok(&rv_dot(&w, &w) / &s.pow(3))
}

/// `τ = det(ċ, c̈, c⃛) / ‖ċ × c̈‖²`.
pub fn torsion(c: &SpaceCurve) -> Result<RatFunc> {
    let d1 = derivative(c, 1);
    let d2 = derivative(c, 2);
    let w = rv_cross(&d1, &d2);
    if w.iter().all(RatFunc::is_zero) {
        return Err(Error::LinearSpine);
    }
    let d3 = derivative(c, 3);
    Ok(&rv_dot(&w, &d3) / &rv_dot(&w, &w))
}

/// `Q c + b` as an exact curve.
pub fn apply_isometry(f: &Isometry, c: &SpaceCurve) -> Result<SpaceCurve> {
    if !f.is_exact() {
        return Err(Error::ExactnessRequired);
    }
    let q = f.q();
    let b = f.b();
    let mut comps = Vec::with_capacity(3);
    for i in 0..3 {
        let mut acc = RatFunc::constant(b[i].clone());
        for j in 0..3 {
            if !q[i][j].is_zero() {
                acc = &acc + &c.comps[j].scale(&q[i][j]);
            }
        }
        comps.push(acc);
    }
    let [x, y, z]: [RatFunc; 3] = comps.try_into().unwrap();
    SpaceCurve::new(x, y, z)
}

/// Candidates for `φ` in `f ∘ c = c ∘ φ` from pointwise invariance of
/// curvature and torsion.
#[derive(Clone, Debug, PartialEq)]
pub enum InvariantCandidates {
    Finite(Vec<Moebius>),
    /// Both invariants are constant (circle or helix).
    ContinuousFamily,
}

/// Numerator of `f(t) - s·f(u)` as a polynomial in `(t, u)`.
fn difference_poly(f: &RatFunc, s: i32) -> BiPoly {
    let a = BiPoly::outer(f.num(), f.den());
    let b = BiPoly::outer(f.den(), f.num());
    if s > 0 {
        &a - &b
    } else {
        &a + &b
    }
}

/// Möbius factors shared by `K = num(κ²(t) - κ²(u))` and
/// `T± = num(τ(t) ∓ τ(u))`.
pub fn candidate_moebius_from_invariants(c: &SpaceCurve) -> Result<InvariantCandidates> {
    let k = kappa_sq(c)?;
    let tau = torsion(c)?;
    let kconst = k.is_constant();
    let tconst = tau.is_constant();
    if kconst && tconst {
        return Ok(InvariantCandidates::ContinuousFamily);
    }
    let kpoly = difference_poly(&k, 1);
    let mut out: Vec<Moebius> = Vec::new();
    if !tconst {
        for s in [1, -1] {
            let tp = difference_poly(&tau, s);
            if tp.is_zero() {
                continue;
            }
            for f in moebius_like_factors(&tp)? {
                if !kconst && !vanishes_on(&kpoly, &f.moebius) {
                    continue;
                }
                if !out.contains(&f.moebius) {
                    out.push(f.moebius);
                }
            }
        }
    } else {
        out = moebius_like_factors(&kpoly)?
            .into_iter()
            .map(|f| f.moebius)
            .collect();
    }
    out.sort();
    Ok(InvariantCandidates::Finite(out))
}

/// Cached derivatives for floating-point Frenet frames.
#[derive(Clone, Debug)]
pub struct Frenet {
    pub d1: RatVec,
    pub d2: RatVec,
}

fn norm(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

pub fn cross_f64(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn dot_f64(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

impl Frenet {
    pub fn new(c: &SpaceCurve) -> Self {
        Self {
            d1: derivative(c, 1),
            d2: derivative(c, 2),
        }
    }

    /// `(tangent, principal normal, binormal)` at `t`.
    pub fn frame(&self, t: f64) -> Result<[[f64; 3]; 3]> {
        let v = rv_eval_f64(&self.d1, t);
        let a = rv_eval_f64(&self.d2, t);
        let w = cross_f64(v, a);
        let nv = norm(v);
        let nw = norm(w);
        if !(nv.is_finite() && nw.is_finite()) || nw <= 1e-12 * nv * norm(a).max(1.0) || nv == 0.0 {
            return Err(Error::FrameDegenerate);
        }
        let tt = v.map(|x| x / nv);
        let bb = w.map(|x| x / nw);
        let nn = cross_f64(bb, tt);
        Ok([tt, nn, bb])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{int, rat};

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    fn twisted_cubic() -> SpaceCurve {
        SpaceCurve::from_polys(p(&[0, 1]), p(&[0, 0, 1]), p(&[0, 0, 0, 1])).unwrap()
    }

    #[test]
    fn derivatives() {
        let c = twisted_cubic();
        let d2 = derivative(&c, 2);
        assert_eq!(d2, [RatFunc::zero(), RatFunc::constant(int(2)), RatFunc::poly(p(&[0, 6]))]);
        assert_eq!(derivative(&c, 0), *c.components());
        let line = SpaceCurve::from_polys(p(&[0]), p(&[0]), p(&[1, -2])).unwrap();
        assert_eq!(derivative(&line, 1)[2], RatFunc::constant(int(-2)));
    }

    #[test]
    fn twisted_cubic_invariants() {
        let c = twisted_cubic();
        let k = kappa_sq(&c).unwrap();
        let expect_k = RatFunc::new(
            &p(&[4, 0, 36, 0, 36]),
            &p(&[1, 0, 4, 0, 9]).pow(3),
        )
        .unwrap();
        assert_eq!(k, expect_k);
        let tau = torsion(&c).unwrap();
        assert_eq!(tau, RatFunc::new(&p(&[3]), &p(&[1, 0, 9, 0, 9])).unwrap());
    }

    #[test]
    fn circle_has_constant_curvature() {
        // a = 2: 2((1-t^2)/(1+t^2), 2t/(1+t^2), 0)
        let den = p(&[1, 0, 1]);
        let c = SpaceCurve::from_common_den([p(&[2, 0, -2]), p(&[0, 4]), p(&[0])], &den).unwrap();
        assert_eq!(kappa_sq(&c).unwrap(), RatFunc::constant(rat(1, 4)));
        assert!(torsion(&c).unwrap().is_zero());
        assert_eq!(
            candidate_moebius_from_invariants(&c).unwrap(),
            InvariantCandidates::ContinuousFamily
        );
    }

    #[test]
    fn linear_spine_is_rejected() {
        let line = SpaceCurve::from_polys(p(&[0, 1]), p(&[0]), p(&[0])).unwrap();
        assert_eq!(kappa_sq(&line), Err(Error::LinearSpine));
    }

    #[test]
    fn isometry_action() {
        let c = twisted_cubic();
        assert_eq!(apply_isometry(&Isometry::identity(), &c).unwrap(), c);
    }
}
