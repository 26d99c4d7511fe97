//! Canal surfaces: regularity, characteristic circles and the symmetry
//! search.
//!
//! A symmetry `f` of the surface with spine `c` and radius `r` comes with a
//! Möbius map `φ` such that `f ∘ c = c ∘ φ` and `r² = (r ∘ φ)²`. Candidate
//! maps are the bilinear factors of `A²(t)B²(u) - A²(u)B²(t)` where
//! `r = A/B`; for pipe surfaces (constant `r`) they come from curvature and
//! torsion instead.

use num_traits::{One, Signed, Zero};

use crate::curves::{
    apply_isometry, candidate_moebius_from_invariants, derivative, kappa_sq,
    rv_eval, torsion, InvariantCandidates, SpaceCurve,
};
use crate::error::{Error, Result};
use crate::group;
use crate::isometry::{primitive_direction, Isometry};
use crate::linalg::{
    self, add, cross, det, dot, from_columns, inverse, is_zero, mat_mul, mat_vec, norm_sq, scale,
    sub, Mat3, Vec3,
};
use crate::moebius::{moebius_like_factors, Moebius};
use crate::ratpoly::{
    default_width, int, rat, real_roots, sqrt_rat, tenth_power, BiPoly, IsolatedRoot, Rat,
    RatFunc, UniPoly,
};

/// Envelope of the spheres centered at `spine(t)` with radius `radius(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanalSurface {
    pub spine: SpaceCurve,
    pub radius: RatFunc,
}

impl CanalSurface {
    pub fn new(spine: SpaceCurve, radius: RatFunc) -> Self {
        Self { spine, radius }
    }

    /// `‖ċ‖² - ṙ²`.
    pub fn envelope_function(&self) -> RatFunc {
        let dr = self.radius.derivative();
        &self.spine.speed_sq() - &(&dr * &dr)
    }

    /// The surface moved by an exact isometry.
    pub fn transformed(&self, f: &Isometry) -> Result<CanalSurface> {
        Ok(CanalSurface {
            spine: apply_isometry(f, &self.spine)?,
            radius: self.radius.clone(),
        })
    }
}

/// Circle in 3-space. `radius` is exact when `radius_exact`, otherwise a
/// rational approximation of `sqrt(radius_sq)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circle3 {
    pub center: Vec3,
    pub radius: Rat,
    pub radius_sq: Rat,
    pub radius_exact: bool,
    pub plane_normal: Vec3,
}

#[derive(Clone, Debug)]
pub struct RegularityReport {
    /// `‖ċ‖² - ṙ²`.
    pub envelope: RatFunc,
    /// Real roots of the envelope function.
    pub degenerate_params: Vec<IsolatedRoot>,
    /// Real roots of `r`, where the surface pinches to a point.
    pub pinch_points: Vec<IsolatedRoot>,
    pub passes: bool,
}

/// A symmetry together with the reparametrization it induces.
#[derive(Clone, Debug, PartialEq)]
pub struct Symmetry {
    pub isometry: Isometry,
    /// `φ` with `f ∘ c = c ∘ φ` (first spine for cyclides).
    pub moebius: Moebius,
    /// Map on the second spine of a Dupin cyclide.
    pub moebius_second: Option<Moebius>,
    /// Whether `f` exchanges the two spines of a Dupin cyclide.
    pub swaps_spines: bool,
    /// Letter of the canonical cyclide symmetry, `'a'..='l'`.
    pub tag: Option<char>,
}

impl Symmetry {
    pub fn new(isometry: Isometry, moebius: Moebius) -> Self {
        Self {
            isometry,
            moebius,
            moebius_second: None,
            swaps_spines: false,
            tag: None,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.isometry.is_exact() && self.moebius.is_exact()
    }
}

/// Rotation-invariant families: tori of revolution and helical pipes.
#[derive(Clone, Debug, PartialEq)]
pub struct ContinuousFamily {
    pub axis_point: Vec3,
    pub axis_direction: Vec3,
    pub kind: FamilyKind,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FamilyKind {
    /// Rotations about the axis, reflections in planes through it, and the
    /// reflection in the plane perpendicular to it through `axis_point`.
    /// `pose` maps the data to the canonical torus position.
    Torus { pose: Isometry },
    /// Pipe along a helix: screw motions about the axis.
    Helical,
}

impl ContinuousFamily {
    /// The torus member `(x, y, z) -> (ε₂(x cos θ - y sin θ), x sin θ + y cos θ, ε₁ z)`
    /// in canonical position, conjugated back by the pose, with the Möbius
    /// maps it induces on the circle and line spines of the canonical
    /// parametrization.
    pub fn member(
        &self,
        eps1: i32,
        eps2: i32,
        cos: &Rat,
        sin: &Rat,
    ) -> Result<(Isometry, Moebius, Moebius)> {
        let FamilyKind::Torus { pose } = &self.kind else {
            return Err(Error::InvalidParams("members are enumerated for tori only".into()));
        };
        if eps1.abs() != 1 || eps2.abs() != 1 {
            return Err(Error::InvalidParams("signs must be +1 or -1".into()));
        }
        if cos * cos + sin * sin != Rat::one() {
            return Err(Error::InvalidParams("cos^2 + sin^2 must equal 1".into()));
        }
        let e1 = int(eps1 as i64);
        let e2 = int(eps2 as i64);
        let z = Rat::zero();
        let q = [
            [&e2 * cos, -(&e2 * sin), z.clone()],
            [sin.clone(), cos.clone(), z.clone()],
            [z.clone(), z.clone(), e1.clone()],
        ];
        let f = Isometry::linear(q)?;
        let phi1 = if (cos + Rat::one()).is_zero() {
            if eps2 > 0 {
                Moebius::neg_reciprocal()
            } else {
                Moebius::negation()
            }
        } else {
            let t = sin / (cos + Rat::one());
            if eps2 > 0 {
                Moebius::new(Rat::one(), t.clone(), -t, Rat::one())?
            } else {
                Moebius::new(-t.clone(), Rat::one(), Rat::one(), t)?
            }
        };
        let phi2 = Moebius::new(e1, Rat::zero(), Rat::zero(), Rat::one())?;
        let world = f.conjugate_by(&pose.inverse());
        Ok((world, phi1, phi2))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryReport {
    pub symmetries: Vec<Symmetry>,
    pub continuous_family: Option<ContinuousFamily>,
    pub group_label: String,
}

impl SymmetryReport {
    pub fn len(&self) -> usize {
        self.symmetries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symmetries.is_empty()
    }

    pub fn isometries(&self) -> Vec<Isometry> {
        self.symmetries.iter().map(|s| s.isometry.clone()).collect()
    }

    pub fn contains_identity(&self) -> bool {
        self.symmetries.iter().any(|s| s.isometry.is_identity())
    }

    pub fn is_group(&self) -> bool {
        group::is_group(&self.isometries())
    }
}

/// `A_i²(t) B_j²(u) - A_j²(u) B_i²(t)` for `r_i = A_i/B_i`, `r_j = A_j/B_j`.
pub fn radius_condition_poly(r_i: &RatFunc, r_j: &RatFunc) -> BiPoly {
    let ai2 = r_i.num().pow(2);
    let bi2 = r_i.den().pow(2);
    let aj2 = r_j.num().pow(2);
    let bj2 = r_j.den().pow(2);
    &BiPoly::outer(&ai2, &bj2) - &BiPoly::outer(&bi2, &aj2)
}

/// Parameters tried for frame reconstruction: 0, 1, -1, 2, -2, ...
pub(crate) fn trial_params() -> impl Iterator<Item = Rat> {
    (0..40i64).map(|k| if k % 2 == 1 { int(k / 2 + 1) } else { int(-(k / 2)) })
}

/// The isometry `f` with `f ∘ c_src = c_dst ∘ φ`, if one exists. When
/// several exist (planar curves), the orientation-preserving one is returned.
pub fn isometry_from_moebius(
    c_src: &SpaceCurve,
    c_dst: &SpaceCurve,
    phi: &Moebius,
) -> Result<Option<Isometry>> {
    Ok(isometries_from_moebius(c_src, c_dst, phi)?.into_iter().next())
}

/// Every isometry `f` with `f ∘ c_src = c_dst ∘ φ`; at most two, differing
/// by the reflection in the plane of a planar curve.
///
/// At a regular parameter, `Q` is fixed by `Q ċ = ḋ`, `Q c̈ = d̈` up to the
/// reflection in the osculating plane, so `Q (ċ × c̈) = ±(ḋ × d̈)` gives two
/// candidates; `b` follows from the positions. Candidates are verified.
pub fn isometries_from_moebius(
    c_src: &SpaceCurve,
    c_dst: &SpaceCurve,
    phi: &Moebius,
) -> Result<Vec<Isometry>> {
    if c_src.is_linear() {
        return Err(Error::LinearSpine);
    }
    let d = c_dst.compose_moebius(phi);
    let s1 = derivative(c_src, 1);
    let s2 = derivative(c_src, 2);
    let e1 = derivative(&d, 1);
    let e2 = derivative(&d, 2);
    for t0 in trial_params() {
        let (Ok(p), Ok(v1), Ok(v2), Ok(pd), Ok(w1), Ok(w2)) = (
            c_src.eval(&t0),
            rv_eval(&s1, &t0),
            rv_eval(&s2, &t0),
            d.eval(&t0),
            rv_eval(&e1, &t0),
            rv_eval(&e2, &t0),
        ) else {
            continue;
        };
        if phi.apply(&t0).is_err() {
            continue;
        }
        let v3 = cross(&v1, &v2);
        if is_zero(&v3) {
            continue;
        }
        let vinv = inverse(&from_columns(&v1, &v2, &v3)).expect("independent frame");
        let w3 = cross(&w1, &w2);
        let mut out = Vec::new();
        for s in [1i32, -1] {
            let w3s = if s > 0 { w3.clone() } else { linalg::neg(&w3) };
            let q: Mat3 = mat_mul(&from_columns(&w1, &w2, &w3s), &vinv);
            let sign_ok = if s > 0 {
                det(&q).is_positive()
            } else {
                det(&q).is_negative()
            };
            if !sign_ok {
                continue;
            }
            let b = sub(&pd, &mat_vec(&q, &p));
            let f = if phi.is_exact() {
                Isometry::new(q, b)
            } else {
                Isometry::new_numeric(q, b)
            };
            if let Ok(f) = f {
                if verify_conjugation(&f, c_src, c_dst, phi) {
                    out.push(f);
                }
            }
        }
        return Ok(out);
    }
    Err(Error::FrameDegenerate)
}

/// Parameter `u` with `c(u) = p`, when the curve passes through `p` exactly
/// once at a finite parameter.
pub fn preimage(c: &SpaceCurve, p: &Vec3) -> Option<Rat> {
    let mut g: Option<UniPoly> = None;
    for (comp, x) in c.components().iter().zip(p.iter()) {
        let h = comp.num() - &comp.den().scale(x);
        if h.is_zero() {
            continue;
        }
        g = Some(match g {
            None => h,
            Some(g) => g.gcd(&h),
        });
    }
    let g = g?;
    if g.degree() != Some(1) {
        return None;
    }
    Some(-(g.coeff(0) / g.coeff(1)))
}

/// The Möbius map `φ` with `f ∘ c_src = c_dst ∘ φ` for a known exact `f`,
/// fitted through three point correspondences and then verified.
pub fn moebius_from_isometry(f: &Isometry, c_src: &SpaceCurve, c_dst: &SpaceCurve) -> Option<Moebius> {
    if !f.is_exact() {
        return None;
    }
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for t in trial_params() {
        let Ok(p) = c_src.eval(&t) else { continue };
        let Some(u) = preimage(c_dst, &f.apply(&p)) else {
            continue;
        };
        // u (γ t + δ) - (α t + β) = 0
        rows.push(vec![-t.clone(), -Rat::one(), &u * &t, u]);
        if rows.len() == 3 {
            break;
        }
    }
    if rows.len() < 3 {
        return None;
    }
    let ns = linalg::nullspace(&rows, 4);
    if ns.len() != 1 {
        return None;
    }
    let v = &ns[0];
    let phi = Moebius::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()).ok()?;
    verify_conjugation(f, c_src, c_dst, &phi).then_some(phi)
}

/// Whether `f ∘ c_src = c_dst ∘ φ`: an exact identity of rational functions
/// for exact data, a residual check below `10^-25` at 20 parameters
/// otherwise.
pub fn verify_conjugation(f: &Isometry, c_src: &SpaceCurve, c_dst: &SpaceCurve, phi: &Moebius) -> bool {
    if f.is_exact() && phi.is_exact() {
        return match apply_isometry(f, c_src) {
            Ok(lhs) => lhs == c_dst.compose_moebius(phi),
            Err(_) => false,
        };
    }
    let tol = tenth_power(25);
    let mut checked = 0;
    for k in 0..60i64 {
        let t = rat(k, 7) - rat(3, 2) + rat(1, 101);
        let (Ok(p), Ok(u)) = (c_src.eval(&t), phi.apply(&t)) else {
            continue;
        };
        let Ok(q) = c_dst.eval(&u) else { continue };
        let diff = sub(&f.apply(&p), &q);
        if diff.iter().any(|x| x.abs() >= tol) {
            return false;
        }
        checked += 1;
        if checked == 20 {
            return true;
        }
    }
    false
}

/// Regularity of the envelope and pinch points of the surface.
pub fn check_regularity(s: &CanalSurface) -> Result<RegularityReport> {
    let env = s.envelope_function();
    if env.is_zero() {
        return Err(Error::DegenerateEnvelope);
    }
    let w = default_width();
    let degenerate_params = if env.num().is_constant() {
        Vec::new()
    } else {
        real_roots(env.num(), &w)?
    };
    let pinch_points = if s.radius.is_zero() {
        Vec::new()
    } else if s.radius.num().is_constant() {
        Vec::new()
    } else {
        real_roots(s.radius.num(), &w)?
    };
    let positive = trial_params()
        .find_map(|t| env.eval(&t).ok())
        .is_some_and(|v| v.is_positive());
    Ok(RegularityReport {
        passes: degenerate_params.is_empty() && positive,
        envelope: env,
        degenerate_params,
        pinch_points,
    })
}

/// Contact circle of the sphere at parameter `t` with the envelope:
/// center `c - r ṙ ċ/‖ċ‖²`, radius `|r| sqrt(1 - ṙ²/‖ċ‖²)`, normal `ċ`.
pub fn characteristic_circle(s: &CanalSurface, t: &Rat) -> Result<Circle3> {
    let bad = || Error::DegenerateCircle(crate::ratpoly::format_rat(t));
    let c = s.spine.eval(t).map_err(|_| bad())?;
    let v = rv_eval(&derivative(&s.spine, 1), t).map_err(|_| bad())?;
    let r = s.radius.eval(t).map_err(|_| bad())?;
    let dr = s.radius.derivative().eval(t).map_err(|_| bad())?;
    let speed = norm_sq(&v);
    if speed.is_zero() || speed <= &dr * &dr {
        return Err(bad());
    }
    let center = sub(&c, &scale(&v, &(&r * &dr / &speed)));
    let radius_sq = &r * &r * (Rat::one() - &dr * &dr / &speed);
    let root = sqrt_rat(&radius_sq);
    Ok(Circle3 {
        center,
        radius: root.value,
        radius_sq,
        radius_exact: root.exact,
        plane_normal: v,
    })
}

/// Axis of a curve with constant curvature and torsion, from the Darboux
/// vector at a regular parameter.
fn helix_axis(c: &SpaceCurve, k: &Rat, tau: &Rat) -> Result<(Vec3, Vec3)> {
    let d1 = derivative(c, 1);
    let d2 = derivative(c, 2);
    for t0 in trial_params() {
        let (Ok(p), Ok(v), Ok(a)) = (c.eval(&t0), rv_eval(&d1, &t0), rv_eval(&d2, &t0)) else {
            continue;
        };
        let w = cross(&v, &a);
        if is_zero(&w) {
            continue;
        }
        let s = norm_sq(&v);
        let dir = add(&scale(&v, &(tau * &s)), &w);
        let denom = &s * &s * (k + tau * tau);
        let point = add(&p, &scale(&cross(&w, &v), &denom.recip()));
        return Ok((point, primitive_direction(&dir)));
    }
    Err(Error::FrameDegenerate)
}

/// Closes a symmetry list under composition; products are verified before
/// they are added.
fn close_group(c: &SpaceCurve, mut syms: Vec<Symmetry>) -> Vec<Symmetry> {
    let limit = 48;
    loop {
        let mut added = false;
        let n = syms.len();
        'outer: for i in 0..n {
            for j in 0..n {
                let f = syms[i].isometry.compose(&syms[j].isometry);
                if syms.iter().any(|s| group::same(&s.isometry, &f)) {
                    continue;
                }
                let phi = syms[i].moebius.compose(&syms[j].moebius);
                if verify_conjugation(&f, c, c, &phi) {
                    syms.push(Symmetry::new(f, phi));
                    added = true;
                    if syms.len() >= limit {
                        break 'outer;
                    }
                }
            }
        }
        if !added || syms.len() >= limit {
            return syms;
        }
    }
}

fn sort_symmetries(syms: &mut [Symmetry]) {
    syms.sort_by(|a, b| {
        b.isometry
            .is_identity()
            .cmp(&a.isometry.is_identity())
            .then_with(|| a.moebius.cmp(&b.moebius))
    });
}

/// All symmetries of a canal surface whose spine is not a line.
///
/// Dupin cyclides have two spines and are handled by [`crate::dupin`].
pub fn sym_canal(s: &CanalSurface) -> Result<SymmetryReport> {
    let c = &s.spine;
    if c.is_linear() {
        return Err(Error::LinearSpine);
    }
    let candidates: Vec<Moebius> = if s.radius.is_constant() {
        match candidate_moebius_from_invariants(c)? {
            InvariantCandidates::Finite(v) => v,
            InvariantCandidates::ContinuousFamily => return continuous_report(s),
        }
    } else {
        let r = radius_condition_poly(&s.radius, &s.radius);
        moebius_like_factors(&r)?
            .into_iter()
            .map(|f| f.moebius)
            .collect()
    };
    let mut syms: Vec<Symmetry> = Vec::new();
    for phi in candidates {
        for f in isometries_from_moebius(c, c, &phi)? {
            if !syms.iter().any(|x| group::same(&x.isometry, &f)) {
                syms.push(Symmetry::new(f, phi.clone()));
            }
        }
    }
    if !syms.iter().any(|x| x.isometry.is_identity()) {
        syms.push(Symmetry::new(Isometry::identity(), Moebius::identity()));
    }
    let mut syms = close_group(c, syms);
    sort_symmetries(&mut syms);
    let label = group::label(&syms.iter().map(|x| x.isometry.clone()).collect::<Vec<_>>());
    Ok(SymmetryReport {
        symmetries: syms,
        continuous_family: None,
        group_label: label,
    })
}

fn continuous_report(s: &CanalSurface) -> Result<SymmetryReport> {
    let c = &s.spine;
    let k = kappa_sq(c)?.constant_value().expect("constant curvature");
    let tau = torsion(c)?.constant_value().expect("constant torsion");
    let (point, dir) = helix_axis(c, &k, &tau)?;
    let kind = if tau.is_zero() {
        FamilyKind::Torus {
            pose: torus_pose(&point, &dir)?,
        }
    } else {
        FamilyKind::Helical
    };
    let label = match kind {
        FamilyKind::Torus { .. } => group::Z2_2_X_S1,
        FamilyKind::Helical => group::CONTINUOUS,
    };
    Ok(SymmetryReport {
        symmetries: vec![Symmetry::new(Isometry::identity(), Moebius::identity())],
        continuous_family: Some(ContinuousFamily {
            axis_point: point,
            axis_direction: dir,
            kind,
        }),
        group_label: label.into(),
    })
}

/// Isometry taking `point` to the origin and `dir` to the z-axis; exact when
/// the normalization is rational, numeric otherwise.
fn torus_pose(point: &Vec3, dir: &Vec3) -> Result<Isometry> {
    let ez = dir.clone();
    let helper = if ez[0].is_zero() && ez[1].is_zero() {
        linalg::vec3(1, 0, 0)
    } else {
        linalg::vec3(0, 0, 1)
    };
    let ex = cross(&helper, &ez);
    let ey = cross(&ez, &ex);
    let mut rows = Vec::new();
    let mut exact = true;
    for e in [ex, ey, ez] {
        let n = sqrt_rat(&dot(&e, &e));
        exact &= n.exact;
        rows.push(scale(&e, &n.value.recip()));
    }
    let r: Mat3 = [rows[0].clone(), rows[1].clone(), rows[2].clone()];
    let b = linalg::neg(&mat_vec(&r, point));
    if exact {
        Isometry::new(r, b)
    } else {
        Isometry::new_numeric(r, b)
    }
}

/// `r² = (r ∘ φ)²` as an exact identity.
pub fn radius_condition_holds(r: &RatFunc, phi: &Moebius) -> bool {
    let [a, b, c, d] = phi.coeffs();
    let rp = r.compose_moebius(a, b, c, d);
    &rp * &rp == r * r
}
