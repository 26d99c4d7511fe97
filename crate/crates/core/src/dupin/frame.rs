//! Canonical frame of a Dupin cyclide given by its two (spine, radius)
//! pairs.
//!
//! The radius of a Dupin cyclide is an affine function of the spine point,
//! `r = α + ⟨w, p - O⟩`, with `w` along the canonical x-axis. Fitting it on
//! each spine recovers the axis and the parameters without reference to the
//! parametrization of the input.

use num_traits::{One, Signed, Zero};

use super::canonical::{canonical_spines, CyclideType, DupinParams};
use super::conic::{classify_conic, rv_dot_const, ConicInfo, ConicKind, Plane};
use crate::canal::trial_params;
use crate::curves::{apply_isometry, SpaceCurve};
use crate::error::{Error, Result};
use crate::isometry::{primitive_direction, Isometry};
use crate::linalg::{add, cross, dot, is_zero, mat_vec, neg, norm_sq, scale, solve, sub, Mat3, Vec3};
use crate::ratpoly::{rat, sqrt_rat, tenth_power, Rat, RatFunc};

/// A spine curve with its radius function.
pub type Pair = (SpaceCurve, RatFunc);

/// `r(p) = alpha + ⟨w, p - O⟩` along a spine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadiusFit {
    pub alpha: Rat,
    pub w: Vec3,
}

impl RadiusFit {
    fn flipped(&self) -> Self {
        Self {
            alpha: -self.alpha.clone(),
            w: neg(&self.w),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DupinFrame {
    pub cyclide_type: CyclideType,
    pub params: DupinParams,
    /// Center of the canonical configuration.
    pub origin: Vec3,
    /// `Π₀, Π₁, Π₂` and, for Type III, the bisector planes `Π₃, Π₄`. The
    /// spines lie in `Π₁` and `Π₂`; `Π₀` passes through the origin
    /// perpendicular to both.
    pub planes: Vec<Plane>,
    /// Maps the given data to canonical position.
    pub pose: Isometry,
    /// The first given pair plays the role of the second canonical spine.
    pub swapped: bool,
    /// Radius fits of the given pairs (Types II and III), in the order
    /// given, with orientations made consistent.
    pub radius_fits: Option<[RadiusFit; 2]>,
}

fn bad<T>(msg: &str) -> Result<T> {
    Err(Error::NotADupinConfiguration(msg.into()))
}

fn near(a: &Rat, b: &Rat, exact: bool) -> bool {
    if exact {
        a == b
    } else {
        (a - b).abs() < tenth_power(30)
    }
}

fn on_conic(k: &ConicInfo, p: &Vec3, exact: bool) -> bool {
    if exact {
        k.contains(p)
    } else {
        k.residual(p) < tenth_power(30)
    }
}

fn unit(v: &Vec3) -> (Vec3, bool) {
    let n = sqrt_rat(&norm_sq(v));
    (scale(v, &n.value.recip()), n.exact)
}

fn plane_normal(k: &ConicInfo) -> Vec3 {
    primitive_direction(&k.plane.as_ref().expect("planar conic").normal)
}

/// Least data fit of `r` as an affine function on the plane with normal
/// `normal`, verified as an identity.
fn fit_radius(c: &SpaceCurve, r: &RatFunc, origin: &Vec3, normal: &Vec3) -> Option<RadiusFit> {
    let z = Rat::zero;
    let mut rows = vec![vec![z(), normal[0].clone(), normal[1].clone(), normal[2].clone()]];
    let mut rhs = vec![z()];
    for t in trial_params() {
        if let (Ok(p), Ok(v)) = (c.eval(&t), r.eval(&t)) {
            let d = sub(&p, origin);
            rows.push(vec![Rat::one(), d[0].clone(), d[1].clone(), d[2].clone()]);
            rhs.push(v);
        }
        if rows.len() == 8 {
            break;
        }
    }
    let x = solve(&rows, &rhs)?;
    let fit = RadiusFit {
        alpha: x[0].clone(),
        w: [x[1].clone(), x[2].clone(), x[3].clone()],
    };
    let model = &rv_dot_const(c, &fit.w) + &RatFunc::constant(&fit.alpha - dot(&fit.w, origin));
    (model == *r).then_some(fit)
}

fn pose_from(origin: &Vec3, axes: [&Vec3; 3], exact: bool) -> Result<Isometry> {
    let r: Mat3 = [axes[0].clone(), axes[1].clone(), axes[2].clone()];
    let b = neg(&mat_vec(&r, origin));
    if exact {
        Isometry::new(r, b)
    } else {
        Isometry::new_numeric(r, b)
    }
}

struct Recovered {
    params: DupinParams,
    origin: Vec3,
    planes: Vec<Plane>,
    pose: Isometry,
    fits: Option<[RadiusFit; 2]>,
}

fn type_i(circle: &Pair, kc: &ConicInfo, line: &Pair, kl: &ConicInfo) -> Result<Recovered> {
    let o = kc.center_or_vertex.clone();
    let n1 = plane_normal(kc);
    let dir = &kl.axes[0];
    if !is_zero(&cross(dir, &n1)) || !is_zero(&cross(&sub(&o, &kl.center_or_vertex), dir)) {
        return bad("the line spine is not the axis of the circle");
    }
    let Some(c) = circle.1.constant_value() else {
        return bad("the radius along the circle is not constant");
    };
    if c.is_zero() {
        return bad("the radius along the circle is zero");
    }
    let a2 = kc.semi_axes_sq[0].clone();
    let z = &rv_dot_const(&line.0, &n1) - &RatFunc::constant(dot(&n1, &o));
    let diff = &RatFunc::constant(c.clone()) - &line.1;
    let lhs = &(&diff * &diff) - &(&z * &z).scale(&norm_sq(&n1).recip());
    if lhs != RatFunc::constant(a2.clone()) {
        return bad("the radius along the axis does not match the circle");
    }
    let a = sqrt_rat(&a2);
    // x-axis through the point of the circle at the first regular parameter.
    let p0 = trial_params()
        .find_map(|t| circle.0.eval(&t).ok())
        .expect("a circle has regular points");
    let ex_dir = primitive_direction(&sub(&p0, &o));
    let (ez, ez_exact) = unit(&n1);
    let (ex, ex_exact) = unit(&ex_dir);
    let ey = cross(&ez, &ex);
    let exact = a.exact && ez_exact && ex_exact;
    let pose = pose_from(&o, [&ex, &ey, &ez], ez_exact && ex_exact)?;
    let planes = vec![
        Plane::through(&o, ex_dir.clone())?,
        Plane::through(&o, n1.clone())?,
        Plane::through(&o, primitive_direction(&cross(&n1, &ex_dir)))?,
    ];
    let mut params = DupinParams::type_i(a.value, c);
    params.exact = exact;
    Ok(Recovered {
        params,
        origin: o,
        planes,
        pose,
        fits: None,
    })
}

fn type_ii(ell: &Pair, ke: &ConicInfo, hyp: &Pair, kh: &ConicInfo) -> Result<Recovered> {
    let o = ke.center_or_vertex.clone();
    if kh.center_or_vertex != o {
        return bad("the ellipse and hyperbola are not concentric");
    }
    let n1 = plane_normal(ke);
    let n2 = plane_normal(kh);
    if !dot(&n1, &n2).is_zero() {
        return bad("the spine planes are not perpendicular");
    }
    let exact = ke.exact && kh.exact;
    let incident = ke.foci.iter().all(|f| on_conic(kh, f, exact))
        && kh.foci.iter().all(|f| on_conic(ke, f, exact));
    if !incident {
        return bad("the spines do not pass through each other's foci");
    }
    let Some(fe) = fit_radius(&ell.0, &ell.1, &o, &n1) else {
        return bad("the radius is not affine along the ellipse");
    };
    let Some(mut fh) = fit_radius(&hyp.0, &hyp.1, &o, &n2) else {
        return bad("the radius is not affine along the hyperbola");
    };
    let we2 = norm_sq(&fe.w);
    if we2.is_zero() || !dot(&fe.w, &n2).is_zero() {
        return bad("the radius along the ellipse does not vary along its focal axis");
    }
    if scale(&fh.w, &we2) == neg(&fe.w) {
        fh = fh.flipped();
    }
    if scale(&fh.w, &we2) != fe.w || fh.alpha != fe.alpha {
        return bad("the radius functions of the two spines disagree");
    }
    let a2 = ke.semi_axes_sq[0].clone();
    let f2 = &a2 * &we2;
    let b2 = &a2 - &f2;
    if !(b2.is_positive()
        && near(&ke.semi_axes_sq[1], &b2, exact)
        && near(&kh.semi_axes_sq[0], &f2, exact)
        && near(&kh.semi_axes_sq[1], &b2, exact))
    {
        return bad("the conic metrics do not fit a Dupin cyclide");
    }
    let (a, b, f) = (sqrt_rat(&a2), sqrt_rat(&b2), sqrt_rat(&f2));
    let (ez, ez_exact) = unit(&n1);
    let (ey, ey_exact) = unit(&n2);
    let mut ex = cross(&ey, &ez);
    if dot(&ex, &fe.w).is_positive() {
        ex = neg(&ex);
    }
    let pose = pose_from(&o, [&ex, &ey, &ez], ez_exact && ey_exact)?;
    let planes = vec![
        Plane::through(&o, primitive_direction(&cross(&n1, &n2)))?,
        Plane::through(&o, n1)?,
        Plane::through(&o, n2)?,
    ];
    let mut params = DupinParams::type_ii(a.value, b.value, fe.alpha.clone(), f.value);
    params.exact = exact && a.exact && b.exact && f.exact;
    Ok(Recovered {
        params,
        origin: o,
        planes,
        pose,
        fits: Some([fe, fh]),
    })
}

fn type_iii(p1: &Pair, k1: &ConicInfo, p2: &Pair, k2: &ConicInfo) -> Result<Recovered> {
    let mid = |k: &ConicInfo| scale(&add(&k.center_or_vertex, &k.foci[0]), &rat(1, 2));
    let o = mid(k1);
    if mid(k2) != o {
        return bad("the parabolas do not share the midpoint of vertex and focus");
    }
    let n1 = plane_normal(k1);
    let n2 = plane_normal(k2);
    if !dot(&n1, &n2).is_zero() {
        return bad("the spine planes are not perpendicular");
    }
    if !(k2.contains(&k1.foci[0]) && k1.contains(&k2.foci[0])) {
        return bad("the spines do not pass through each other's foci");
    }
    let Some(f1) = fit_radius(&p1.0, &p1.1, &o, &n1) else {
        return bad("the radius is not affine along the first parabola");
    };
    let Some(mut f2) = fit_radius(&p2.0, &p2.1, &o, &n2) else {
        return bad("the radius is not affine along the second parabola");
    };
    if f2.w == neg(&f1.w) {
        f2 = f2.flipped();
    }
    if f2.w != f1.w || norm_sq(&f1.w) != Rat::one() {
        return bad("the radius functions of the two spines disagree");
    }
    let c = (&f1.alpha + &f2.alpha) * rat(1, 2);
    let g = (&f1.alpha - &f2.alpha) * rat(1, 2);
    if g.is_zero() || sub(&k1.foci[0], &k1.center_or_vertex) != scale(&f1.w, &g) {
        return bad("the radius functions do not match the parabolas");
    }
    let (ez, ez_exact) = unit(&n1);
    let (ey, ey_exact) = unit(&n2);
    let ex = f1.w.clone();
    let pose = pose_from(&o, [&ex, &ey, &ez], ez_exact && ey_exact)?;
    let bis = |s: i64| {
        let v = add(&ez, &scale(&ey, &rat(s, 1)));
        if ez_exact && ey_exact {
            primitive_direction(&v)
        } else {
            v
        }
    };
    let planes = vec![
        Plane::through(&o, primitive_direction(&cross(&n1, &n2)))?,
        Plane::through(&o, n1)?,
        Plane::through(&o, n2)?,
        Plane::through(&o, bis(-1))?,
        Plane::through(&o, bis(1))?,
    ];
    Ok(Recovered {
        params: DupinParams::type_iii(g, c),
        origin: o,
        planes,
        pose,
        fits: Some([f1, f2]),
    })
}

fn frame_from(pair1: &Pair, k1: &ConicInfo, pair2: &Pair, k2: &ConicInfo) -> Result<DupinFrame> {
    use ConicKind::*;
    let (ty, swapped, rec) = match (k1.kind, k2.kind) {
        (Circle, Line) => (CyclideType::I, false, type_i(pair1, k1, pair2, k2)?),
        (Line, Circle) => (CyclideType::I, true, type_i(pair2, k2, pair1, k1)?),
        (Ellipse, Hyperbola) => (CyclideType::II, false, type_ii(pair1, k1, pair2, k2)?),
        (Hyperbola, Ellipse) => (CyclideType::II, true, type_ii(pair2, k2, pair1, k1)?),
        (Parabola, Parabola) => (CyclideType::III, false, type_iii(pair1, k1, pair2, k2)?),
        (a, b) => {
            return Err(Error::NotADupinConfiguration(format!(
                "spines are a {a} and a {b}"
            )))
        }
    };
    let fits = rec.fits.map(|[x, y]| if swapped { [y, x] } else { [x, y] });
    Ok(DupinFrame {
        cyclide_type: ty,
        params: rec.params,
        origin: rec.origin,
        planes: rec.planes,
        pose: rec.pose,
        swapped,
        radius_fits: fits,
    })
}

/// Type, canonical parameters, distinguished planes and pose of the
/// cyclide with the given spines.
pub fn dupin_frame(pair1: &Pair, pair2: &Pair) -> Result<DupinFrame> {
    let k1 = classify_conic(&pair1.0)?;
    let k2 = classify_conic(&pair2.0)?;
    frame_from(pair1, &k1, pair2, &k2)
}

/// A Dupin cyclide given as a canal surface in two ways.
#[derive(Clone, Debug, PartialEq)]
pub struct DupinCyclide {
    pub pair1: Pair,
    pub pair2: Pair,
    pub conics: [ConicInfo; 2],
    pub frame: DupinFrame,
}

impl DupinCyclide {
    /// Classifies the spines and recovers the canonical frame.
    pub fn new(pair1: Pair, pair2: Pair) -> Result<Self> {
        let k1 = classify_conic(&pair1.0)?;
        let k2 = classify_conic(&pair2.0)?;
        let frame = frame_from(&pair1, &k1, &pair2, &k2)?;
        Ok(Self {
            pair1,
            pair2,
            conics: [k1, k2],
            frame,
        })
    }

    pub fn canonical(ty: CyclideType, params: &DupinParams) -> Result<Self> {
        let [p1, p2] = canonical_spines(ty, params)?;
        Self::new(p1, p2)
    }

    pub fn cyclide_type(&self) -> CyclideType {
        self.frame.cyclide_type
    }

    pub fn pairs(&self) -> [&Pair; 2] {
        [&self.pair1, &self.pair2]
    }

    /// The image under an exact isometry, reclassified.
    pub fn transformed(&self, g: &Isometry) -> Result<Self> {
        let p1 = (apply_isometry(g, &self.pair1.0)?, self.pair1.1.clone());
        let p2 = (apply_isometry(g, &self.pair2.0)?, self.pair2.1.clone());
        Self::new(p1, p2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vec3;
    use crate::ratpoly::int;

    #[test]
    fn canonical_type_iii_frame() {
        let d = DupinCyclide::canonical(CyclideType::III, &DupinParams::type_iii(int(1), rat(3, 10)))
            .unwrap();
        let fr = &d.frame;
        assert_eq!(fr.origin, vec3(0, 0, 0));
        assert!(fr.pose.is_identity());
        let expect = [(1, 0, 0), (0, 0, 1), (0, 1, 0), (0, -1, 1), (0, 1, 1)];
        for (pl, (x, y, z)) in fr.planes.iter().zip(expect) {
            assert!(pl.same_as(&Plane::new(vec3(x, y, z), int(0)).unwrap()), "{pl}");
        }
        assert_eq!(fr.params, DupinParams::type_iii(int(1), rat(3, 10)));
    }

    #[test]
    fn canonical_type_ii_parameters() {
        let p = DupinParams::type_ii(int(5), int(4), int(-1), int(3));
        let d = DupinCyclide::canonical(CyclideType::II, &p).unwrap();
        assert_eq!(d.frame.params, p);
        assert!(d.frame.pose.is_identity());
    }

    #[test]
    fn translated_data() {
        let p = DupinParams::type_ii(int(5), int(4), int(0), int(3));
        let d = DupinCyclide::canonical(CyclideType::II, &p).unwrap();
        let moved = d.transformed(&Isometry::translation(vec3(1, 2, 3))).unwrap();
        assert_eq!(moved.frame.origin, vec3(1, 2, 3));
        assert_eq!(moved.frame.pose, Isometry::translation(vec3(-1, -2, -3)));
        assert_eq!(moved.frame.params, p);
    }

    #[test]
    fn rejects_mismatched_spines() {
        let [(c1, r1), _] = canonical_spines(CyclideType::II, &DupinParams::type_ii(int(5), int(4), int(0), int(3))).unwrap();
        let [_, p2] = canonical_spines(CyclideType::III, &DupinParams::type_iii(int(1), int(0))).unwrap();
        assert!(matches!(
            DupinCyclide::new((c1, r1), p2),
            Err(Error::NotADupinConfiguration(_))
        ));
    }
}
