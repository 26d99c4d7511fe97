//! Floating-point evaluation of canal surfaces, tessellation and OBJ output.

use std::f64::consts::PI;
use std::io::Write;

use crate::canal::CanalSurface;
use crate::curves::{derivative, rv_eval_f64, Frenet, RatVec};
use crate::error::{Error, Result};
use crate::ratpoly::{real_roots, to_f64, Rat, RatFunc, UniPoly};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct TriMesh {
    pub vertices: Vec<[f64; 3]>,
    pub normals: Vec<[f64; 3]>,
    pub faces: Vec<[usize; 3]>,
}

impl TriMesh {
    pub fn is_valid(&self) -> bool {
        let n = self.vertices.len();
        self.normals.len() == n
            && self.faces.iter().all(|f| f.iter().all(|&i| i < n))
            && self
                .normals
                .iter()
                .all(|v| ((v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt() - 1.0).abs() < 1e-9)
    }
}

/// Caches the derivatives a canal surface needs for repeated evaluation.
pub struct SurfaceEvaluator<'a> {
    surface: &'a CanalSurface,
    frenet: Frenet,
    velocity: RatVec,
    radius_rate: RatFunc,
}

fn circle_coords(s: f64) -> (f64, f64) {
    if s.is_infinite() {
        (-1.0, 0.0)
    } else {
        let d = 1.0 + s * s;
        ((1.0 - s * s) / d, 2.0 * s / d)
    }
}

impl<'a> SurfaceEvaluator<'a> {
    pub fn new(surface: &'a CanalSurface) -> Self {
        Self {
            surface,
            frenet: Frenet::new(&surface.spine),
            velocity: derivative(&surface.spine, 1),
            radius_rate: surface.radius.derivative(),
        }
    }

    /// Unit normal `N(t, s)`, the point of the characteristic circle at `t`
    /// seen from the spine. `s = ±∞` gives the antipode of `s = 0`.
    pub fn normal(&self, t: f64, s: f64) -> Result<[f64; 3]> {
        let [tt, nn, bb] = self.frenet.frame(t)?;
        let v = rv_eval_f64(&self.velocity, t);
        let speed = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        let w = -self.radius_rate.eval_f64(t) / speed;
        if !w.is_finite() || w.abs() > 1.0 {
            return Err(Error::DegenerateCircle(format!("{t}")));
        }
        let h = (1.0 - w * w).sqrt();
        let (cs, sn) = circle_coords(s);
        Ok([0, 1, 2].map(|i| w * tt[i] + h * (cs * nn[i] + sn * bb[i])))
    }

    /// `F(t, s) = c(t) + r(t) N(t, s)` with its normal.
    pub fn point(&self, t: f64, s: f64) -> Result<([f64; 3], [f64; 3])> {
        let n = self.normal(t, s)?;
        let c = self.surface.spine.eval_f64(t);
        let r = self.surface.radius.eval_f64(t);
        Ok(([0, 1, 2].map(|i| c[i] + r * n[i]), n))
    }
}

/// `N(t, s)` for a single evaluation.
pub fn normals(s: &CanalSurface, t: f64, sp: f64) -> Result<[f64; 3]> {
    SurfaceEvaluator::new(s).normal(t, sp)
}

fn pole_in(p: &UniPoly, lo: &Rat, hi: &Rat) -> Option<Rat> {
    if p.is_constant() {
        return None;
    }
    real_roots(p, &crate::ratpoly::pow2(-20))
        .ok()?
        .into_iter()
        .map(|r| r.midpoint())
        .find(|m| m >= lo && m <= hi)
}

/// Mesh of `F` over `[t_lo, t_hi]` × full circle: `nt` rows in `t`, `ns`
/// columns in `s = tan(θ/2)` including `s = ∞`. Vertices are ordered by
/// `t`-index, then `s`-index.
pub fn sample_surface(s: &CanalSurface, window: (&Rat, &Rat), nt: usize, ns: usize) -> Result<TriMesh> {
    if nt < 2 || ns < 2 {
        return Err(Error::InvalidParams("the grid needs at least 2 x 2 samples".into()));
    }
    let (lo, hi) = window;
    if lo >= hi {
        return Err(Error::InvalidParams("empty parameter window".into()));
    }
    let dens = s.spine.components().iter().map(|f| f.den()).chain([s.radius.den()]);
    for d in dens {
        if let Some(p) = pole_in(d, lo, hi) {
            return Err(Error::PoleInWindow(format!("{:.6}", to_f64(&p))));
        }
    }
    let ev = SurfaceEvaluator::new(s);
    let (a, b) = (to_f64(lo), to_f64(hi));
    let mut mesh = TriMesh::default();
    for i in 0..nt {
        let t = a + (b - a) * i as f64 / (nt - 1) as f64;
        for j in 0..ns {
            let theta = -PI + 2.0 * PI * j as f64 / ns as f64;
            let sp = if j == 0 { f64::INFINITY } else { (theta / 2.0).tan() };
            let (p, n) = ev.point(t, sp).map_err(|e| match e {
                Error::FrameDegenerate | Error::DegenerateCircle(_) => Error::PoleInWindow(format!("{t:.6}")),
                e => e,
            })?;
            mesh.vertices.push(p);
            mesh.normals.push(n);
        }
    }
    for i in 0..nt - 1 {
        for j in 0..ns {
            let k = (j + 1) % ns;
            let (v00, v01) = (i * ns + j, i * ns + k);
            let (v10, v11) = (v00 + ns, v01 + ns);
            mesh.faces.push([v00, v10, v11]);
            mesh.faces.push([v00, v11, v01]);
        }
    }
    Ok(mesh)
}

/// Wavefront OBJ with `v`, `vn` and `f` records.
pub fn export_obj<W: Write>(m: &TriMesh, sink: &mut W) -> Result<()> {
    writeln!(sink, "# canalsym mesh: {} vertices, {} faces", m.vertices.len(), m.faces.len())?;
    for v in &m.vertices {
        writeln!(sink, "v {} {} {}", v[0], v[1], v[2])?;
    }
    for n in &m.normals {
        writeln!(sink, "vn {} {} {}", n[0], n[1], n[2])?;
    }
    for f in &m.faces {
        let [a, b, c] = f.map(|i| i + 1);
        writeln!(sink, "f {a}//{a} {b}//{b} {c}//{c}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::SpaceCurve;
    use crate::ratpoly::{int, rat};

    fn unit_quad() -> TriMesh {
        TriMesh {
            vertices: vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [1.0, 1.0, 0.0], [0.0, 1.0, 0.0]],
            normals: vec![[0.0, 0.0, 1.0]; 4],
            faces: vec![[0, 1, 2], [0, 2, 3]],
        }
    }

    fn count(text: &str, tag: &str) -> usize {
        text.lines().filter(|l| l.split_whitespace().next() == Some(tag)).count()
    }

    #[test]
    fn obj_records() {
        let mut out = Vec::new();
        export_obj(&TriMesh::default(), &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().count(), 1);
        assert!(text.starts_with('#'));

        let mut out = Vec::new();
        export_obj(&unit_quad(), &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(count(&text, "v"), 4);
        assert_eq!(count(&text, "vn"), 4);
        assert_eq!(count(&text, "f"), 2);
        assert!(!text.contains('\r'));
    }

    #[test]
    fn pipe_normals_are_orthogonal_to_spine() {
        let c = SpaceCurve::from_polys(
            UniPoly::from_ints(&[0, 1]),
            UniPoly::from_ints(&[0, 0, 1]),
            UniPoly::from_ints(&[0, 0, 0, 1]),
        )
        .unwrap();
        let s = CanalSurface::new(c.clone(), RatFunc::constant(rat(1, 10)));
        let v = derivative(&c, 1);
        for (t, sp) in [(0.3, 0.0), (-1.2, 2.5), (0.7, f64::INFINITY)] {
            let n = normals(&s, t, sp).unwrap();
            let d = rv_eval_f64(&v, t);
            assert!((n[0] * d[0] + n[1] * d[1] + n[2] * d[2]).abs() < 1e-12);
        }
    }

    #[test]
    fn pole_in_window_rejected() {
        let c = SpaceCurve::new(
            RatFunc::new(&UniPoly::from_ints(&[1]), &UniPoly::from_ints(&[-1, 1])).unwrap(),
            RatFunc::poly(UniPoly::from_ints(&[0, 0, 1])),
            RatFunc::poly(UniPoly::from_ints(&[0, 1])),
        )
        .unwrap();
        let s = CanalSurface::new(c, RatFunc::constant(rat(1, 10)));
        assert!(matches!(
            sample_surface(&s, (&int(0), &int(2)), 4, 4),
            Err(Error::PoleInWindow(_))
        ));
        let m = sample_surface(&s, (&int(2), &int(3)), 4, 6).unwrap();
        assert_eq!(m.vertices.len(), 24);
        assert_eq!(m.faces.len(), 36);
        assert!(m.is_valid());
    }
}
