//! Canonical Dupin cyclides, their implicit equations and their discrete
//! symmetries.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::curves::SpaceCurve;
use crate::error::{Error, Result};
use crate::linalg::{diag, mat_from_ints, Mat3, Vec3};
use crate::moebius::Moebius;
use crate::ratpoly::{int, rat, Rat, RatFunc, UniPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CyclideType {
    /// Torus: circle and line spines.
    I,
    /// Ellipse and hyperbola spines.
    II,
    /// Two parabolas; the surface is a cubic.
    III,
}

impl fmt::Display for CyclideType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CyclideType::I => "I",
            CyclideType::II => "II",
            CyclideType::III => "III",
        })
    }
}

/// Canonical parameters; only the entries used by the type are present.
///
/// `exact == false` means some entries are 320-bit approximations of
/// irrational square roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DupinParams {
    pub a: Option<Rat>,
    pub b: Option<Rat>,
    pub c: Option<Rat>,
    pub f: Option<Rat>,
    pub g: Option<Rat>,
    pub exact: bool,
}

impl DupinParams {
    pub fn type_i(a: Rat, c: Rat) -> Self {
        Self {
            a: Some(a),
            b: None,
            c: Some(c),
            f: None,
            g: None,
            exact: true,
        }
    }

    pub fn type_ii(a: Rat, b: Rat, c: Rat, f: Rat) -> Self {
        Self {
            a: Some(a),
            b: Some(b),
            c: Some(c),
            f: Some(f),
            g: None,
            exact: true,
        }
    }

    pub fn type_iii(g: Rat, c: Rat) -> Self {
        Self {
            a: None,
            b: None,
            c: Some(c),
            f: None,
            g: Some(g),
            exact: true,
        }
    }

    fn get(&self, name: &str, v: &Option<Rat>) -> Result<Rat> {
        v.clone()
            .ok_or_else(|| Error::InvalidParams(format!("parameter {name} is missing")))
    }

    /// Checks the constraints of the type: `a, c ≠ 0` (I); `a, b ≠ 0`,
    /// `f > 0`, `f² = a² - b²` (II); `g ≠ 0` (III).
    pub fn validate(&self, ty: CyclideType) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParams(m.into()));
        match ty {
            CyclideType::I => {
                let a = self.get("a", &self.a)?;
                let c = self.get("c", &self.c)?;
                if a.is_zero() || c.is_zero() {
                    return bad("type I needs a, c nonzero");
                }
            }
            CyclideType::II => {
                let a = self.get("a", &self.a)?;
                let b = self.get("b", &self.b)?;
                self.get("c", &self.c)?;
                let f = self.get("f", &self.f)?;
                if a.is_zero() || b.is_zero() || !f.is_positive() {
                    return bad("type II needs a, b nonzero and f > 0");
                }
                if self.exact && &f * &f != &a * &a - &b * &b {
                    return bad("type II needs f^2 = a^2 - b^2");
                }
            }
            CyclideType::III => {
                let g = self.get("g", &self.g)?;
                self.get("c", &self.c)?;
                if g.is_zero() {
                    return bad("type III needs g nonzero");
                }
            }
        }
        Ok(())
    }
}

fn poly(c: Vec<Rat>) -> UniPoly {
    UniPoly::new(c)
}

/// The two (spine, radius) pairs of the canonical cyclide.
pub fn canonical_spines(
    ty: CyclideType,
    params: &DupinParams,
) -> Result<[(SpaceCurve, RatFunc); 2]> {
    params.validate(ty)?;
    let z = Rat::zero;
    let plus = poly(vec![int(1), int(0), int(1)]);
    let minus = poly(vec![int(1), int(0), int(-1)]);
    match ty {
        CyclideType::I => {
            let a = params.a.clone().unwrap();
            let c = params.c.clone().unwrap();
            let c1 = SpaceCurve::from_common_den(
                [poly(vec![a.clone(), z(), -a.clone()]), poly(vec![z(), &a * int(2)]), poly(vec![])],
                &plus,
            )?;
            let c2 = SpaceCurve::from_common_den(
                [poly(vec![]), poly(vec![]), poly(vec![z(), &a * int(2)])],
                &minus,
            )?;
            let r1 = RatFunc::constant(c.clone());
            let r2 = RatFunc::new(&poly(vec![&c - &a, z(), -(&c + &a)]), &minus)?;
            Ok([(c1, r1), (c2, r2)])
        }
        CyclideType::II => {
            let a = params.a.clone().unwrap();
            let b = params.b.clone().unwrap();
            let c = params.c.clone().unwrap();
            let f = params.f.clone().unwrap();
            let c1 = SpaceCurve::from_common_den(
                [poly(vec![a.clone(), z(), -a.clone()]), poly(vec![z(), &b * int(2)]), poly(vec![])],
                &plus,
            )?;
            let c2 = SpaceCurve::from_common_den(
                [poly(vec![f.clone(), z(), f.clone()]), poly(vec![]), poly(vec![z(), &b * int(2)])],
                &minus,
            )?;
            let r1 = RatFunc::new(&poly(vec![&c - &f, z(), &c + &f]), &plus)?;
            let r2 = RatFunc::new(&poly(vec![&c - &a, z(), -(&c + &a)]), &minus)?;
            Ok([(c1, r1), (c2, r2)])
        }
        CyclideType::III => {
            let g = params.g.clone().unwrap();
            let c = params.c.clone().unwrap();
            let h = &g * rat(1, 2);
            let c1 = SpaceCurve::from_polys(
                poly(vec![-h.clone(), z(), g.clone()]),
                poly(vec![z(), &g * int(2)]),
                poly(vec![]),
            )?;
            let c2 = SpaceCurve::from_polys(
                poly(vec![h.clone(), z(), -g.clone()]),
                poly(vec![]),
                poly(vec![z(), &g * int(2)]),
            )?;
            let r1 = RatFunc::poly(poly(vec![&c + &h, z(), g.clone()]));
            let r2 = RatFunc::poly(poly(vec![&c - &h, z(), -g.clone()]));
            Ok([(c1, r1), (c2, r2)])
        }
    }
}

/// The canonical implicit equation `F(p)` of the given type.
pub fn implicit_eval(ty: CyclideType, params: &DupinParams, p: &Vec3) -> Result<Rat> {
    params.validate(ty)?;
    let [x, y, z] = p;
    let x2 = x * x;
    let y2 = y * y;
    let z2 = z * z;
    let s = &x2 + &y2 + &z2;
    let c = params.c.clone().unwrap();
    let c2 = &c * &c;
    Ok(match ty {
        CyclideType::I => {
            let a2 = params.a.as_ref().map(|a| a * a).unwrap();
            let u = &s + &a2 - &c2;
            &u * &u - int(4) * &a2 * (&x2 + &y2)
        }
        CyclideType::II => {
            let a = params.a.clone().unwrap();
            let f = params.f.clone().unwrap();
            let a2 = &a * &a;
            let f2 = &f * &f;
            let u = &s + &a2 - &f2 - &c2;
            let v = &a * x - &c * &f;
            &u * &u - int(4) * &v * &v - int(4) * &y2 * (&a2 - &f2)
        }
        CyclideType::III => {
            let g = params.g.clone().unwrap();
            let g2 = &g * &g;
            (x + &c) * &s + (&y2 - &z2) * &g - (&g2 + &c2) * x + (&g2 - &c2) * &c
        }
    })
}

/// A discrete symmetry of a canonical cyclide of Type II or III.
#[derive(Clone, Debug, PartialEq)]
pub struct TableRow {
    pub tag: char,
    pub q: Mat3,
    /// Maps of the first and second canonical spines.
    pub phi1: Moebius,
    pub phi2: Moebius,
    /// Case B: the spines are exchanged.
    pub swaps_spines: bool,
    pub description: &'static str,
}

fn m(tag: char) -> (Moebius, Moebius) {
    let t = Moebius::identity;
    let n = Moebius::negation;
    let r = Moebius::reciprocal;
    let nr = Moebius::neg_reciprocal;
    match tag {
        'a' | 'i' => (t(), t()),
        'b' | 'k' => (t(), n()),
        'c' | 'l' => (n(), t()),
        'd' | 'j' => (n(), n()),
        'e' => (r(), nr()),
        'f' => (r(), r()),
        'g' => (nr(), nr()),
        'h' => (nr(), r()),
        _ => unreachable!("unknown table row"),
    }
}

/// Rows of the symmetry table that apply: (a)-(d) always, (e)-(h) for
/// super-symmetric Type II, (i)-(l) for super-symmetric Type III.
pub fn table_rows(ty: CyclideType, super_symmetric: bool) -> Vec<TableRow> {
    let mut rows: Vec<(char, Mat3, &'static str)> = vec![
        ('a', diag(1, 1, 1), "trivial symmetry"),
        ('b', diag(1, 1, -1), "reflection in the plane of the first spine"),
        ('c', diag(1, -1, 1), "reflection in the plane of the second spine"),
        ('d', diag(1, -1, -1), "half-turn about the intersection of the spine planes"),
    ];
    if super_symmetric && ty == CyclideType::II {
        rows.extend([
            ('e', diag(-1, 1, 1), "reflection in the plane through the center perpendicular to both spine planes"),
            ('f', diag(-1, 1, -1), "half-turn about the line in the first spine plane through the center"),
            ('g', diag(-1, -1, 1), "half-turn about the line in the second spine plane through the center"),
            ('h', diag(-1, -1, -1), "central symmetry about the center"),
        ]);
    }
    if super_symmetric && ty == CyclideType::III {
        rows.extend([
            ('i', mat_from_ints([[-1, 0, 0], [0, 0, 1], [0, 1, 0]]), "half-turn about a bisector line"),
            ('j', mat_from_ints([[-1, 0, 0], [0, 0, -1], [0, -1, 0]]), "half-turn about the other bisector line"),
            ('k', mat_from_ints([[-1, 0, 0], [0, 0, -1], [0, 1, 0]]), "reflection composed with a quarter-turn"),
            ('l', mat_from_ints([[-1, 0, 0], [0, 0, 1], [0, -1, 0]]), "reflection composed with the opposite quarter-turn"),
        ]);
    }
    if ty == CyclideType::I {
        rows.truncate(0);
    }
    rows.into_iter()
        .map(|(tag, q, description)| {
            let (phi1, phi2) = m(tag);
            TableRow {
                tag,
                q,
                phi1,
                phi2,
                swaps_spines: tag >= 'i',
                description,
            }
        })
        .collect()
}
