//! Planes and conics carried by rational spine curves.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::canal::trial_params;
use crate::curves::SpaceCurve;
use crate::error::{Error, Result};
use crate::isometry::{fmt_plane, primitive_direction};
use crate::linalg::{add, cross, dot, is_zero, norm_sq, nullspace, scale, sub, Vec3};
use crate::ratpoly::{int, rat, sqrt_rat, Rat, RatFunc};

/// `{x : ⟨normal, x⟩ = offset}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plane {
    pub normal: Vec3,
    pub offset: Rat,
}

impl Plane {
    pub fn new(normal: Vec3, offset: Rat) -> Result<Self> {
        if is_zero(&normal) {
            return Err(Error::DegenerateInput("plane normal is zero".into()));
        }
        Ok(Self { normal, offset })
    }

    pub fn through(point: &Vec3, normal: Vec3) -> Result<Self> {
        let offset = dot(&normal, point);
        Self::new(normal, offset)
    }

    /// `⟨normal, p⟩ - offset`.
    pub fn eval(&self, p: &Vec3) -> Rat {
        dot(&self.normal, p) - &self.offset
    }

    pub fn contains(&self, p: &Vec3) -> bool {
        self.eval(p).is_zero()
    }

    /// Same point set, regardless of the scaling of the equation.
    pub fn same_as(&self, other: &Plane) -> bool {
        cross(&self.normal, &other.normal).iter().all(Zero::is_zero)
            && (&self.offset * dot(&other.normal, &other.normal)
                == &other.offset * dot(&self.normal, &other.normal))
    }
}

impl fmt::Display for Plane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_plane(&self.normal, &self.offset))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConicKind {
    Circle,
    Ellipse,
    Hyperbola,
    Parabola,
    Line,
}

impl fmt::Display for ConicKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ConicKind::Circle => "circle",
            ConicKind::Ellipse => "ellipse",
            ConicKind::Hyperbola => "hyperbola",
            ConicKind::Parabola => "parabola",
            ConicKind::Line => "line",
        };
        f.write_str(s)
    }
}

/// Metric description of a conic.
///
/// In-plane coordinates `(s, w)` stand for the point `origin + s·u1 + w·u2`
/// with `u1 ⊥ u2` spanning the plane; `matrix` is the symmetric 3×3 matrix
/// of the conic in `(s, w, 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConicInfo {
    pub kind: ConicKind,
    /// `None` for a line, which lies in many planes.
    pub plane: Option<Plane>,
    /// Center of a central conic, vertex of a parabola, a point of a line.
    pub center_or_vertex: Vec3,
    pub foci: Vec<Vec3>,
    /// Ellipse and hyperbola: focal axis, then the other axis. Parabola:
    /// vertex-to-focus direction. Line: direction. Circle: none.
    pub axes: Vec<Vec3>,
    /// Squared semi-axes along `axes` (ellipse, hyperbola), squared radius
    /// (circle), squared vertex-focus distance (parabola).
    pub semi_axes_sq: Vec<Rat>,
    pub matrix: [[Rat; 3]; 3],
    pub frame: Option<(Vec3, Vec3, Vec3)>,
    /// False when foci or axes needed irrational square roots and hold
    /// 320-bit approximations.
    pub exact: bool,
}

impl ConicInfo {
    /// In-plane coordinates of a point of the plane.
    pub fn in_plane_coords(&self, p: &Vec3) -> Option<(Rat, Rat)> {
        let (o, u1, u2) = self.frame.as_ref()?;
        let d = sub(p, o);
        Some((dot(&d, u1) / norm_sq(u1), dot(&d, u2) / norm_sq(u2)))
    }

    fn conic_value(&self, s: &Rat, w: &Rat) -> Rat {
        let v = [s.clone(), w.clone(), Rat::one()];
        let mut acc = Rat::zero();
        for i in 0..3 {
            for j in 0..3 {
                acc += &self.matrix[i][j] * &v[i] * &v[j];
            }
        }
        acc
    }

    /// Distance-like defect of `p`: plane residual plus conic residual.
    pub fn residual(&self, p: &Vec3) -> Rat {
        match (&self.plane, self.in_plane_coords(p)) {
            (Some(pl), Some((s, w))) => pl.eval(p).abs() + self.conic_value(&s, &w).abs(),
            _ => {
                let d = sub(p, &self.center_or_vertex);
                norm_sq(&cross(&d, &self.axes[0]))
            }
        }
    }

    /// Exact point-on-conic test.
    pub fn contains(&self, p: &Vec3) -> bool {
        self.residual(p).is_zero()
    }
}

fn sample_points(c: &SpaceCurve, n: usize) -> Vec<Vec3> {
    let mut pts: Vec<Vec3> = Vec::new();
    for t in trial_params() {
        if let Ok(p) = c.eval(&t) {
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        if pts.len() == n {
            break;
        }
    }
    pts
}

pub(crate) fn rv_dot_const(c: &SpaceCurve, v: &Vec3) -> RatFunc {
    let mut acc = RatFunc::zero();
    for i in 0..3 {
        if !v[i].is_zero() {
            acc = &acc + &c.component(i).scale(&v[i]);
        }
    }
    acc
}

/// Classifies a rational parametrization of a conic or line and computes
/// its metric data.
pub fn classify_conic(c: &SpaceCurve) -> Result<ConicInfo> {
    let pts = sample_points(c, 9);
    if pts.len() < 6 {
        return Err(Error::DegenerateConic("too few regular sample points".into()));
    }
    if c.is_linear() {
        let dir = primitive_direction(&sub(&pts[1], &pts[0]));
        return Ok(ConicInfo {
            kind: ConicKind::Line,
            plane: None,
            center_or_vertex: pts[0].clone(),
            foci: Vec::new(),
            axes: vec![dir],
            semi_axes_sq: Vec::new(),
            matrix: crate::linalg::zero_mat(),
            frame: None,
            exact: true,
        });
    }

    // Supporting plane from the samples, then checked symbolically.
    let rows: Vec<Vec<Rat>> = pts
        .iter()
        .map(|p| vec![p[0].clone(), p[1].clone(), p[2].clone(), Rat::one()])
        .collect();
    let ns = nullspace(&rows, 4);
    let Some(v) = ns.first() else {
        return Err(Error::NotPlanar);
    };
    let normal = primitive_direction(&[v[0].clone(), v[1].clone(), v[2].clone()]);
    let plane = Plane::through(&pts[0], normal.clone())?;
    let lhs = rv_dot_const(c, &normal);
    if lhs != RatFunc::constant(plane.offset.clone()) {
        return Err(Error::NotPlanar);
    }

    // Orthogonal in-plane basis.
    let k = (0..3)
        .min_by_key(|&i| normal[i].abs())
        .expect("three coordinates");
    let mut e = [Rat::zero(), Rat::zero(), Rat::zero()];
    e[k] = Rat::one();
    let u1 = cross(&normal, &e);
    let u2 = cross(&normal, &u1);
    let l1 = norm_sq(&u1);
    let l2 = norm_sq(&u2);
    let origin = pts[0].clone();
    let coords = |p: &Vec3| {
        let d = sub(p, &origin);
        (dot(&d, &u1) / &l1, dot(&d, &u2) / &l2)
    };

    // Conic through the samples: A s² + B s w + C w² + D s + E w + F.
    let rows: Vec<Vec<Rat>> = pts
        .iter()
        .map(|p| {
            let (s, w) = coords(p);
            vec![&s * &s, &s * &w, &w * &w, s, w, Rat::one()]
        })
        .collect();
    let ns = nullspace(&rows, 6);
    if ns.len() != 1 {
        return Err(Error::DegenerateConic("sample points do not fix a conic".into()));
    }
    let q = &ns[0];
    let sf = &rv_dot_const(c, &u1).scale(&l1.recip()) - &RatFunc::constant(dot(&origin, &u1) / &l1);
    let wf = &rv_dot_const(c, &u2).scale(&l2.recip()) - &RatFunc::constant(dot(&origin, &u2) / &l2);
    let terms = [&sf * &sf, &sf * &wf, &wf * &wf, sf.clone(), wf.clone(), RatFunc::constant(Rat::one())];
    let mut acc = RatFunc::zero();
    for (coef, term) in q.iter().zip(terms.iter()) {
        if !coef.is_zero() {
            acc = &acc + &term.scale(coef);
        }
    }
    if !acc.is_zero() {
        return Err(Error::DegenerateConic("curve is not a conic".into()));
    }

    let half = rat(1, 2);
    let (a, b, cc, d, ee, f) = (
        q[0].clone(),
        &q[1] * &half,
        q[2].clone(),
        &q[3] * &half,
        &q[4] * &half,
        q[5].clone(),
    );
    let matrix = [
        [a.clone(), b.clone(), d.clone()],
        [b.clone(), cc.clone(), ee.clone()],
        [d.clone(), ee.clone(), f.clone()],
    ];
    if crate::linalg::det(&matrix).is_zero() {
        return Err(Error::DegenerateConic("conic matrix is singular".into()));
    }
    let to_world = |s: &Rat, w: &Rat| add(&origin, &add(&scale(&u1, s), &scale(&u2, w)));
    let to_dir = |s: &Rat, w: &Rat| add(&scale(&u1, s), &scale(&u2, w));
    let det2 = &a * &cc - &b * &b;
    let mut info = ConicInfo {
        kind: ConicKind::Parabola,
        plane: Some(plane),
        center_or_vertex: origin.clone(),
        foci: Vec::new(),
        axes: Vec::new(),
        semi_axes_sq: Vec::new(),
        matrix,
        frame: Some((origin.clone(), u1.clone(), u2.clone())),
        exact: true,
    };

    if det2.is_zero() {
        // Axis direction k spans the kernel of the quadratic part; m is its
        // metric complement.
        let kern = nullspace(&[vec![a.clone(), b.clone()], vec![b.clone(), cc.clone()]], 2);
        let kv = &kern[0];
        let (ks, kw) = (kv[0].clone(), kv[1].clone());
        let (ms, mw) = (&l2 * &kw, -(&l1 * &ks));
        let quad = |x: &Rat, y: &Rat| &a * x * x + int(2) * &b * x * y + &cc * y * y;
        let qm = quad(&ms, &mw);
        let dk = int(2) * (&d * &ks + &ee * &kw);
        let dm = int(2) * (&d * &ms + &ee * &mw);
        let kk = &l1 * &ks * &ks + &l2 * &kw * &kw;
        let mm = &l1 * &ms * &ms + &l2 * &mw * &mw;
        let beta0 = -(&dm / (int(2) * &qm));
        let alpha0 = -((&f - &dm * &dm / (int(4) * &qm)) / &dk);
        let alpha_f = &alpha0 - &dk * &mm / (int(4) * &qm * &kk);
        let vertex = to_world(&(&alpha0 * &ks + &beta0 * &ms), &(&alpha0 * &kw + &beta0 * &mw));
        let focus = to_world(&(&alpha_f * &ks + &beta0 * &ms), &(&alpha_f * &kw + &beta0 * &mw));
        let axis = sub(&focus, &vertex);
        info.semi_axes_sq = vec![norm_sq(&axis)];
        info.axes = vec![axis];
        info.center_or_vertex = vertex;
        info.foci = vec![focus];
        return Ok(info);
    }

    // Central conic: center, value there, generalized eigenvalues.
    let cs = (&b * &ee - &cc * &d) / &det2;
    let cw = (&b * &d - &a * &ee) / &det2;
    let fc = &f + &d * &cs + &ee * &cw;
    let center = to_world(&cs, &cw);
    info.center_or_vertex = center.clone();
    if fc.is_zero() {
        return Err(Error::DegenerateConic("pair of lines".into()));
    }
    if b.is_zero() && &a * &l2 == &cc * &l1 {
        let r2 = -(&fc * &l1 / &a);
        if !r2.is_positive() {
            return Err(Error::DegenerateConic("imaginary circle".into()));
        }
        info.kind = ConicKind::Circle;
        info.semi_axes_sq = vec![r2];
        info.foci = vec![center];
        return Ok(info);
    }
    let lin = &a * &l2 + &cc * &l1;
    let disc = &lin * &lin - int(4) * &l1 * &l2 * &det2;
    let root = sqrt_rat(&disc);
    info.exact = root.exact;
    let den = int(2) * &l1 * &l2;
    let lams = [(&lin + &root.value) / &den, (&lin - &root.value) / &den];
    let semis: Vec<Rat> = lams.iter().map(|l| -(&fc / l)).collect();
    let (major, minor) = if det2.is_positive() {
        if !semis[0].is_positive() {
            return Err(Error::DegenerateConic("imaginary ellipse".into()));
        }
        info.kind = ConicKind::Ellipse;
        if semis[0] >= semis[1] {
            (0, 1)
        } else {
            (1, 0)
        }
    } else {
        info.kind = ConicKind::Hyperbola;
        if semis[0].is_positive() {
            (0, 1)
        } else {
            (1, 0)
        }
    };
    let eig = |l: &Rat| {
        let v1 = (b.clone(), l * &l1 - &a);
        if v1.0.is_zero() && v1.1.is_zero() {
            (l * &l2 - &cc, b.clone())
        } else {
            v1
        }
    };
    let (vs, vw) = eig(&lams[major]);
    let (os, ow) = eig(&lams[minor]);
    let axis = to_dir(&vs, &vw);
    let other = to_dir(&os, &ow);
    let a2 = semis[major].clone();
    let b2 = semis[minor].abs();
    let e2 = if info.kind == ConicKind::Ellipse {
        &a2 - &b2
    } else {
        &a2 + &b2
    };
    let s = sqrt_rat(&(&e2 / norm_sq(&axis)));
    info.exact &= s.exact || e2.is_zero();
    let off = scale(&axis, &s.value);
    info.foci = vec![add(&center, &off), sub(&center, &off)];
    info.axes = vec![axis, other];
    info.semi_axes_sq = vec![a2, b2];
    Ok(info)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vec3;
    use crate::ratpoly::UniPoly;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn circle_in_xy_plane() {
        let den = p(&[1, 0, 1]);
        let c = SpaceCurve::from_common_den([p(&[2, 0, -2]), p(&[0, 4]), p(&[0])], &den).unwrap();
        let info = classify_conic(&c).unwrap();
        assert_eq!(info.kind, ConicKind::Circle);
        assert_eq!(info.center_or_vertex, vec3(0, 0, 0));
        assert_eq!(info.semi_axes_sq, vec![int(4)]);
        assert!(info.plane.as_ref().unwrap().same_as(&Plane::new(vec3(0, 0, 1), int(0)).unwrap()));
        assert!(info.contains(&vec3(0, 2, 0)));
        assert!(!info.contains(&vec3(1, 1, 0)));
    }

    #[test]
    fn parabola_vertex_and_focus() {
        // (t² - 1/2, 2t, 0): y² = 4(x + 1/2)
        let c = SpaceCurve::from_polys(
            UniPoly::new(vec![rat(-1, 2), int(0), int(1)]),
            p(&[0, 2]),
            p(&[0]),
        )
        .unwrap();
        let info = classify_conic(&c).unwrap();
        assert_eq!(info.kind, ConicKind::Parabola);
        assert_eq!(info.center_or_vertex, [rat(-1, 2), int(0), int(0)]);
        assert_eq!(info.foci, vec![[rat(1, 2), int(0), int(0)]]);
    }

    #[test]
    fn non_planar_and_line() {
        let cubic = SpaceCurve::from_polys(p(&[0, 1]), p(&[0, 0, 1]), p(&[0, 0, 0, 1])).unwrap();
        assert_eq!(classify_conic(&cubic), Err(Error::NotPlanar));
        let line = SpaceCurve::from_polys(p(&[1, 1]), p(&[0, 2]), p(&[3])).unwrap();
        let info = classify_conic(&line).unwrap();
        assert_eq!(info.kind, ConicKind::Line);
        assert_eq!(info.axes[0], vec3(1, 2, 0));
    }
}
