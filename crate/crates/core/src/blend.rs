//! Bézier spines and radius functions with prescribed symmetry, and
//! Hermite blends between canal surfaces.
//!
//! Patches live on `t ∈ [0, 1]`. A control polygon with `f(bᵢ) = b_{n-i}`
//! gives `f ∘ c = c ∘ (1 - t)`, and a radius with `aᵢ = (-1)ⁿ a_{n-i}` gives
//! `r²(t) = r²(1 - t)`.

use num_traits::{One, Zero};

use crate::canal::CanalSurface;
use crate::curves::{derivative, rv_eval, SpaceCurve};
use crate::error::{Error, Result};
use crate::isometry::Isometry;
use crate::linalg::{add, neg, scale, solve, sub, Vec3};
use crate::moebius::Moebius;
use crate::ratpoly::{int, Rat, RatFunc, UniPoly};

/// Highest supported continuity order.
pub const MAX_CONTINUITY: usize = 3;

fn binom(n: usize, k: usize) -> Rat {
    (0..k).fold(Rat::one(), |acc, j| acc * int((n - j) as i64) / int((j + 1) as i64))
}

/// `n! / (n - k)!`
fn falling(n: usize, k: usize) -> Rat {
    (0..k).fold(Rat::one(), |acc, j| acc * int((n - j) as i64))
}

/// `B_{i,n}(t) = C(n, i) tⁱ (1 - t)^{n-i}`.
pub fn bernstein_eval(n: usize, i: usize, t: &Rat) -> Result<Rat> {
    if i > n {
        return Err(Error::IndexOutOfRange(format!("i = {i} exceeds n = {n}")));
    }
    let s = Rat::one() - t;
    Ok(binom(n, i) * num_traits::pow(t.clone(), i) * num_traits::pow(s, n - i))
}

/// `B_{i,n}` in the power basis.
pub fn bernstein_poly(n: usize, i: usize) -> Result<UniPoly> {
    if i > n {
        return Err(Error::IndexOutOfRange(format!("i = {i} exceeds n = {n}")));
    }
    let one_minus = UniPoly::from_ints(&[1, -1]);
    Ok(&UniPoly::monomial(binom(n, i), i) * &one_minus.pow(n - i))
}

/// `Δᵏ` applied to a sequence; the result has `len - k` entries.
pub fn forward_difference<T>(seq: &[T], k: usize) -> Result<Vec<T>>
where
    T: Clone,
    for<'a> &'a T: std::ops::Sub<&'a T, Output = T>,
{
    if seq.is_empty() || k > seq.len() - 1 {
        return Err(Error::IndexOutOfRange(format!(
            "order {k} on a sequence of length {}",
            seq.len()
        )));
    }
    let mut cur = seq.to_vec();
    for _ in 0..k {
        cur = cur.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    Ok(cur)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BezierScalar {
    pub coefficients: Vec<Rat>,
}

impl BezierScalar {
    pub fn new(coefficients: Vec<Rat>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::InvalidParams("a Bernstein form needs a coefficient".into()));
        }
        Ok(Self { coefficients })
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn to_poly(&self) -> UniPoly {
        let n = self.degree();
        self.coefficients.iter().enumerate().fold(UniPoly::zero(), |acc, (i, a)| {
            &acc + &bernstein_poly(n, i).expect("i ≤ n").scale(a)
        })
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        RatFunc::poly(self.to_poly())
    }

    pub fn eval(&self, t: &Rat) -> Rat {
        self.to_poly().eval(t)
    }

    /// Whether `aᵢ = (-1)ⁿ a_{n-i}` for all `i`.
    pub fn has_symmetric_pattern(&self) -> bool {
        let n = self.degree();
        let a = &self.coefficients;
        (0..=n).all(|i| if n % 2 == 0 { a[i] == a[n - i] } else { a[i] == -a[n - i].clone() })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BezierCurve3 {
    pub control_points: Vec<Vec3>,
}

impl BezierCurve3 {
    pub fn new(control_points: Vec<Vec3>) -> Result<Self> {
        if control_points.len() < 2 {
            return Err(Error::InvalidParams("a Bézier curve needs at least two control points".into()));
        }
        Ok(Self { control_points })
    }

    pub fn degree(&self) -> usize {
        self.control_points.len() - 1
    }

    pub fn coordinate(&self, j: usize) -> BezierScalar {
        BezierScalar {
            coefficients: self.control_points.iter().map(|b| b[j].clone()).collect(),
        }
    }

    pub fn to_curve(&self) -> SpaceCurve {
        SpaceCurve::from_polys(
            self.coordinate(0).to_poly(),
            self.coordinate(1).to_poly(),
            self.coordinate(2).to_poly(),
        )
        .expect("polynomial components")
    }

    pub fn eval(&self, t: &Rat) -> Vec3 {
        [0, 1, 2].map(|j| self.coordinate(j).eval(t))
    }

    /// Control points in reverse order: the same curve traversed by `1 - t`.
    pub fn reversed(&self) -> Self {
        let mut control_points = self.control_points.clone();
        control_points.reverse();
        Self { control_points }
    }

    /// Whether `f(bᵢ) = b_{n-i}` for all `i`.
    pub fn polygon_reversed_by(&self, f: &Isometry) -> bool {
        let b = &self.control_points;
        let n = self.degree();
        (0..=n).all(|i| f.apply(&b[i]) == b[n - i])
    }

    pub fn polygon_fixed_by(&self, f: &Isometry) -> bool {
        self.control_points.iter().all(|b| f.apply(b) == *b)
    }

    fn is_point(&self) -> bool {
        self.control_points.iter().all(|b| *b == self.control_points[0])
    }
}

/// Completes `free` to a Bernstein coefficient sequence with
/// `aᵢ = (-1)ⁿ a_{n-i}`. `free` holds `a₀ … a_{⌈(n+1)/2⌉-1}`, or a full
/// sequence that is checked against the pattern.
pub fn symmetric_radius_coeffs(n: usize, free: &[Rat]) -> Result<BezierScalar> {
    let half = (n + 2) / 2;
    if free.len() == n + 1 {
        let s = BezierScalar::new(free.to_vec())?;
        return if s.has_symmetric_pattern() {
            Ok(s)
        } else {
            Err(Error::InconsistentConstraint(format!(
                "coefficients do not satisfy a_i = (-1)^{n} a_(n-i)"
            )))
        };
    }
    if free.len() != half {
        return Err(Error::InconsistentConstraint(format!(
            "degree {n} takes {half} independent coefficients, got {}",
            free.len()
        )));
    }
    let odd = n % 2 == 1;
    let coefficients = (0..=n)
        .map(|i| {
            if i < half {
                free[i].clone()
            } else if odd {
                -free[n - i].clone()
            } else {
                free[n - i].clone()
            }
        })
        .collect();
    BezierScalar::new(coefficients)
}

fn check_order(order: usize) -> Result<()> {
    if order > MAX_CONTINUITY {
        return Err(Error::InvalidParams(format!(
            "continuity order {order} exceeds the supported maximum {MAX_CONTINUITY}"
        )));
    }
    Ok(())
}

fn curve_jet(c: &SpaceCurve, t: &Rat, order: usize) -> Result<Vec<Vec3>> {
    (0..=order).map(|k| rv_eval(&derivative(c, k), t)).collect()
}

fn scalar_jet(r: &RatFunc, t: &Rat, order: usize) -> Result<Vec<Rat>> {
    (0..=order).map(|k| r.nth_derivative(k).eval(t)).collect()
}

/// Degree `2N + 1` Bézier curve with `c⁽ᵏ⁾(0) = c₁⁽ᵏ⁾(t₁)` and
/// `c⁽ᵏ⁾(1) = c₂⁽ᵏ⁾(t₂)` for `k ≤ N`.
pub fn hermite_spine(c1: &SpaceCurve, t1: &Rat, c2: &SpaceCurve, t2: &Rat, order: usize) -> Result<BezierCurve3> {
    check_order(order)?;
    let start = curve_jet(c1, t1, order)?;
    let end = curve_jet(c2, t2, order)?;
    let n = 2 * order + 1;
    let zero = [Rat::zero(), Rat::zero(), Rat::zero()];
    let mut b = vec![zero; n + 1];
    for k in 0..=order {
        let w = falling(n, k).recip();
        // Δᵏb₀ = Σⱼ (-1)^{k-j} C(k,j) bⱼ, solved for b_k.
        let mut head = scale(&start[k], &w);
        // Δᵏb_{n-k} = Σⱼ (-1)^{k-j} C(k,j) b_{n-k+j}, solved for b_{n-k}.
        let mut tail = scale(&end[k], &w);
        for j in 0..k {
            let s = if (k - j) % 2 == 0 { Rat::one() } else { -Rat::one() };
            head = sub(&head, &scale(&b[j], &(&s * binom(k, j))));
        }
        for j in 1..=k {
            let s = if (k - j) % 2 == 0 { Rat::one() } else { -Rat::one() };
            tail = sub(&tail, &scale(&b[n - k + j], &(&s * binom(k, j))));
        }
        if k % 2 == 1 {
            tail = neg(&tail);
        }
        b[k] = head;
        b[n - k] = tail;
    }
    BezierCurve3::new(b)
}

/// A Hermite radius; `symmetry_sign` is `σ` with `r(1 - t) = σ r(t)` when
/// symmetry was enforced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteRadius {
    pub radius: BezierScalar,
    pub symmetry_sign: Option<i8>,
}

/// Bernstein coefficients of degree `d` meeting the jets, with
/// `aᵢ = σ a_{d-i}` if `sigma` is given.
fn solve_radius(d: usize, start: &[Rat], end: &[Rat], sigma: Option<i8>) -> Option<Vec<Rat>> {
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (k, (s, e)) in start.iter().zip(end).enumerate() {
        let mut r0 = vec![Rat::zero(); d + 1];
        let mut r1 = vec![Rat::zero(); d + 1];
        if k <= d {
            let w = falling(d, k);
            for j in 0..=k {
                let c = &w * binom(k, j) * if (k - j) % 2 == 0 { Rat::one() } else { -Rat::one() };
                r0[j] += &c;
                r1[d - k + j] += &c;
            }
        }
        rows.push(r0);
        rhs.push(s.clone());
        rows.push(r1);
        rhs.push(e.clone());
    }
    if let Some(sg) = sigma {
        for i in 0..=d / 2 {
            let mut row = vec![Rat::zero(); d + 1];
            row[i] += Rat::one();
            row[d - i] -= int(sg as i64);
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
                rhs.push(Rat::zero());
            }
        }
    }
    solve(&rows, &rhs)
}

/// Whether `r₁⁽ᵏ⁾(t₁) = σ (-1)ᵏ r₂⁽ᵏ⁾(t₂)` for all `k`; the first failing
/// order otherwise.
fn radius_compatibility(start: &[Rat], end: &[Rat], sigma: i8) -> std::result::Result<(), usize> {
    for (k, (s, e)) in start.iter().zip(end).enumerate() {
        let sign = if (sigma < 0) != (k % 2 == 1) { -Rat::one() } else { Rat::one() };
        if *s != sign * e {
            return Err(k);
        }
    }
    Ok(())
}

/// Minimal-degree polynomial radius with `r⁽ᵏ⁾(0) = r₁⁽ᵏ⁾(t₁)` and
/// `r⁽ᵏ⁾(1) = r₂⁽ᵏ⁾(t₂)`. With `enforce_symmetry`, also `r(1 - t) = σ r(t)`,
/// trying `σ = +1` before `σ = -1`.
pub fn hermite_radius(
    r1: &RatFunc,
    t1: &Rat,
    r2: &RatFunc,
    t2: &Rat,
    order: usize,
    enforce_symmetry: bool,
) -> Result<HermiteRadius> {
    check_order(order)?;
    let start = scalar_jet(r1, t1, order)?;
    let end = scalar_jet(r2, t2, order)?;
    if !enforce_symmetry {
        for d in 0..=2 * order + 1 {
            if let Some(a) = solve_radius(d, &start, &end, None) {
                return Ok(HermiteRadius {
                    radius: BezierScalar::new(a)?,
                    symmetry_sign: None,
                });
            }
        }
        unreachable!("degree 2N+1 Hermite interpolation is always solvable");
    }
    let mut first_failure = None;
    for sigma in [1i8, -1] {
        if let Err(k) = radius_compatibility(&start, &end, sigma) {
            first_failure.get_or_insert(k);
            continue;
        }
        let parity = if sigma > 0 { 0 } else { 1 };
        for d in (parity..=2 * order + 1).step_by(2) {
            if let Some(a) = solve_radius(d, &start, &end, Some(sigma)) {
                return Ok(HermiteRadius {
                    radius: BezierScalar::new(a)?,
                    symmetry_sign: Some(sigma),
                });
            }
        }
    }
    Err(Error::InconsistentConstraint(format!(
        "radius derivatives are not related by r1^(k)(t1) = ±(-1)^k r2^(k)(t2) (fails at k = {})",
        first_failure.unwrap_or(0)
    )))
}

/// A blending patch on `t ∈ [0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Blend {
    pub spine: BezierCurve3,
    pub radius: HermiteRadius,
    pub surface: CanalSurface,
    /// Reparametrization induced by the prescribed symmetry, if any:
    /// identity for a reflection in the plane of the spine, `1 - t` when the
    /// symmetry exchanges the ends.
    pub moebius: Option<Moebius>,
}

fn package(spine: BezierCurve3, radius: HermiteRadius, moebius: Option<Moebius>) -> Result<Blend> {
    if spine.is_point() {
        return Err(Error::DegenerateBlend("all control points of the spine coincide".into()));
    }
    let surface = CanalSurface::new(spine.to_curve(), radius.radius.to_ratfunc());
    Ok(Blend {
        spine,
        radius,
        surface,
        moebius,
    })
}

/// `C^N` Hermite blend from the characteristic circle of `S₁` at `t₁` to
/// that of `S₂` at `t₂`, without symmetry constraints.
pub fn hermite_blend(s1: &CanalSurface, t1: &Rat, s2: &CanalSurface, t2: &Rat, order: usize) -> Result<Blend> {
    let spine = hermite_spine(&s1.spine, t1, &s2.spine, t2, order)?;
    let radius = hermite_radius(&s1.radius, t1, &s2.radius, t2, order, false)?;
    package(spine, radius, None)
}

fn one_minus_t() -> Moebius {
    Moebius::from_ints(-1, 1, 0, 1).expect("invertible")
}

/// `C^N` blend invariant under `f`, which must be an involution
/// (reflection, half-turn or central symmetry) unless it fixes the spine.
///
/// If `f` is a reflection fixing the Hermite control polygon, the plain
/// blend is already symmetric. Otherwise `f` must exchange the two ends:
/// `(-1)ᵏ Q c₁⁽ᵏ⁾(t₁) = c₂⁽ᵏ⁾(t₂)` (with `f` itself for `k = 0`), and the
/// radii must satisfy `r₁⁽ᵏ⁾(t₁) = ±(-1)ᵏ r₂⁽ᵏ⁾(t₂)`.
pub fn symmetric_blend(
    s1: &CanalSurface,
    t1: &Rat,
    s2: &CanalSurface,
    t2: &Rat,
    f: &Isometry,
    order: usize,
) -> Result<Blend> {
    if !f.is_exact() {
        return Err(Error::ExactnessRequired);
    }
    let spine = hermite_spine(&s1.spine, t1, &s2.spine, t2, order)?;
    if !f.is_identity() && spine.polygon_fixed_by(f) {
        let radius = hermite_radius(&s1.radius, t1, &s2.radius, t2, order, false)?;
        return package(spine, radius, Some(Moebius::identity()));
    }
    let start = curve_jet(&s1.spine, t1, order)?;
    let end = curve_jet(&s2.spine, t2, order)?;
    for k in 0..=order {
        let image = if k == 0 {
            f.apply(&start[0])
        } else if k % 2 == 0 {
            f.apply_linear(&start[k])
        } else {
            neg(&f.apply_linear(&start[k]))
        };
        if image != end[k] {
            return Err(Error::SymmetryIncompatible {
                order: k,
                reason: "the isometry does not carry the first spine jet onto the second".into(),
            });
        }
    }
    let rs = scalar_jet(&s1.radius, t1, order)?;
    let re = scalar_jet(&s2.radius, t2, order)?;
    if let (Err(k), Err(_)) = (radius_compatibility(&rs, &re, 1), radius_compatibility(&rs, &re, -1)) {
        return Err(Error::SymmetryIncompatible {
            order: k,
            reason: "radius derivatives are not related by ±(-1)^k".into(),
        });
    }
    // f ∘ c = c ∘ (1 - t) forces f² = id on the spine.
    if !spine.polygon_reversed_by(f) {
        return Err(Error::SymmetryIncompatible {
            order: 0,
            reason: "the isometry is not an involution on the blend spine".into(),
        });
    }
    let radius = hermite_radius(&s1.radius, t1, &s2.radius, t2, order, true)?;
    package(spine, radius, Some(one_minus_t()))
}

/// Moves every control point by `f`.
pub fn transform_bezier(b: &BezierCurve3, f: &Isometry) -> BezierCurve3 {
    BezierCurve3 {
        control_points: b.control_points.iter().map(|p| f.apply(p)).collect(),
    }
}

/// `b + t (e - b)` as a linear Bézier curve.
pub fn segment(b: &Vec3, e: &Vec3) -> Result<BezierCurve3> {
    BezierCurve3::new(vec![b.clone(), add(b, &sub(e, b))])
}
