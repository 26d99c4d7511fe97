//! JSON surface descriptions and their exact kernel counterparts.
//!
//! Rationals are strings such as `"-3/4"`, polynomials are ascending
//! coefficient arrays and a curve is three `{num, den}` pairs.

use canalsym::canal::CanalSurface;
use canalsym::curves::SpaceCurve;
use canalsym::dupin::{CyclideType, DupinCyclide, DupinParams};
use canalsym::isometry::Isometry;
use canalsym::ratpoly::{format_rat, parse_rat, Rat, RatFunc, UniPoly};
use serde::{Deserialize, Serialize};

/// A malformed description, naming the offending field.
#[derive(Debug)]
pub struct SpecError(pub String);

impl std::fmt::Display for SpecError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

type Result<T> = std::result::Result<T, SpecError>;

fn err(field: &str, msg: impl std::fmt::Display) -> SpecError {
    SpecError(format!("{field}: {msg}"))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RatFuncJson {
    pub num: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub den: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairJson {
    pub spine: [RatFuncJson; 3],
    pub radius: RatFuncJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CanonicalJson {
    #[serde(rename = "type")]
    pub cyclide_type: String,
    pub a: Option<String>,
    pub b: Option<String>,
    pub c: Option<String>,
    pub f: Option<String>,
    pub g: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsometryJson {
    pub q: [[String; 3]; 3],
    pub b: [String; 3],
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum SpecJson {
    Canal {
        spine: [RatFuncJson; 3],
        radius: RatFuncJson,
        window: Option<[String; 2]>,
        // Written by `blend`; accepted and ignored.
        #[allow(dead_code)]
        control_points: Option<Vec<[String; 3]>>,
        #[allow(dead_code)]
        radius_bernstein: Option<Vec<String>>,
        #[allow(dead_code)]
        moebius: Option<[String; 4]>,
    },
    Dupin {
        spines: Option<[PairJson; 2]>,
        canonical: Option<CanonicalJson>,
    },
    Blend {
        surfaces: [PairJson; 2],
        t1: String,
        t2: String,
        continuity: Option<usize>,
        symmetry: Option<IsometryJson>,
    },
}

/// A parsed description.
pub enum Spec {
    Canal { surface: CanalSurface, window: Option<(Rat, Rat)> },
    Dupin(DupinCyclide),
    Blend(BlendRequest),
}

pub struct BlendRequest {
    pub surfaces: [CanalSurface; 2],
    pub t1: Rat,
    pub t2: Rat,
    pub continuity: Option<usize>,
    pub symmetry: Option<Isometry>,
}

pub fn rational(field: &str, s: &str) -> Result<Rat> {
    parse_rat(s).map_err(|e| err(field, e))
}

fn poly(field: &str, coeffs: &[String]) -> Result<UniPoly> {
    let c = coeffs
        .iter()
        .enumerate()
        .map(|(i, s)| rational(&format!("{field}[{i}]"), s))
        .collect::<Result<Vec<_>>>()?;
    Ok(UniPoly::new(c))
}

fn ratfunc(field: &str, j: &RatFuncJson) -> Result<RatFunc> {
    let num = poly(&format!("{field}.num"), &j.num)?;
    let den = match &j.den {
        Some(d) => poly(&format!("{field}.den"), d)?,
        None => UniPoly::one(),
    };
    if den.is_zero() {
        return Err(err(&format!("{field}.den"), "zero denominator"));
    }
    RatFunc::new(&num, &den).map_err(|e| err(field, e))
}

fn curve(field: &str, j: &[RatFuncJson; 3]) -> Result<SpaceCurve> {
    let [x, y, z] = [0, 1, 2].map(|i| ratfunc(&format!("{field}[{i}]"), &j[i]));
    SpaceCurve::new(x?, y?, z?).map_err(|e| err(field, e))
}

fn pair(field: &str, j: &PairJson) -> Result<CanalSurface> {
    let spine = curve(&format!("{field}.spine"), &j.spine)?;
    let radius = ratfunc(&format!("{field}.radius"), &j.radius)?;
    Ok(CanalSurface::new(spine, radius))
}

fn canonical(j: &CanonicalJson) -> Result<DupinCyclide> {
    let get = |name: &str, v: &Option<String>| -> Result<Rat> {
        let field = format!("canonical.{name}");
        rational(&field, v.as_deref().ok_or_else(|| err(&field, "missing"))?)
    };
    let (ty, params) = match j.cyclide_type.as_str() {
        "I" => (CyclideType::I, DupinParams::type_i(get("a", &j.a)?, get("c", &j.c)?)),
        "II" => (
            CyclideType::II,
            DupinParams::type_ii(get("a", &j.a)?, get("b", &j.b)?, get("c", &j.c)?, get("f", &j.f)?),
        ),
        "III" => (CyclideType::III, DupinParams::type_iii(get("g", &j.g)?, get("c", &j.c)?)),
        other => return Err(err("canonical.type", format!("expected I, II or III, found {other:?}"))),
    };
    params.validate(ty).map_err(|e| err("canonical", e))?;
    DupinCyclide::canonical(ty, &params).map_err(|e| err("canonical", e))
}

pub fn isometry(field: &str, j: &IsometryJson) -> Result<Isometry> {
    let mut q: [[Rat; 3]; 3] = Default::default();
    for (i, row) in j.q.iter().enumerate() {
        for (k, s) in row.iter().enumerate() {
            q[i][k] = rational(&format!("{field}.q[{i}][{k}]"), s)?;
        }
    }
    let mut b: [Rat; 3] = Default::default();
    for (i, s) in j.b.iter().enumerate() {
        b[i] = rational(&format!("{field}.b[{i}]"), s)?;
    }
    Isometry::new(q, b).map_err(|e| err(field, e))
}

/// Parses a description. Dupin cyclides given by two spines go through
/// recognition, so a configuration that is not a cyclide is a kernel
/// failure rather than a spec error.
pub fn parse(text: &str) -> Result<std::result::Result<Spec, canalsym::Error>> {
    let doc: SpecJson = serde_json::from_str(text).map_err(|e| SpecError(e.to_string()))?;
    Ok(match doc {
        SpecJson::Canal { spine, radius, window, .. } => {
            let surface = CanalSurface::new(curve("spine", &spine)?, ratfunc("radius", &radius)?);
            let window = match window {
                Some([lo, hi]) => Some((rational("window[0]", &lo)?, rational("window[1]", &hi)?)),
                None => None,
            };
            Ok(Spec::Canal { surface, window })
        }
        SpecJson::Dupin { spines, canonical: canon } => match (spines, canon) {
            (Some([p1, p2]), None) => {
                let (s1, s2) = (pair("spines[0]", &p1)?, pair("spines[1]", &p2)?);
                DupinCyclide::new((s1.spine, s1.radius), (s2.spine, s2.radius)).map(Spec::Dupin)
            }
            (None, Some(c)) => Ok(Spec::Dupin(canonical(&c)?)),
            _ => return Err(SpecError("dupin: give exactly one of `spines` or `canonical`".into())),
        },
        SpecJson::Blend { surfaces, t1, t2, continuity, symmetry } => {
            let symmetry = match &symmetry {
                Some(j) => Some(isometry("symmetry", j)?),
                None => None,
            };
            Ok(Spec::Blend(BlendRequest {
                surfaces: [pair("surfaces[0]", &surfaces[0])?, pair("surfaces[1]", &surfaces[1])?],
                t1: rational("t1", &t1)?,
                t2: rational("t2", &t2)?,
                continuity,
                symmetry,
            }))
        }
    })
}

pub fn rat_json(x: &Rat) -> String {
    format_rat(x)
}

pub fn ratfunc_json(f: &RatFunc) -> RatFuncJson {
    let den = f.den();
    RatFuncJson {
        num: f.num().coeffs().iter().map(rat_json).collect(),
        den: if den == &UniPoly::one() { None } else { Some(den.coeffs().iter().map(rat_json).collect()) },
    }
}

pub fn pair_json(spine: &SpaceCurve, radius: &RatFunc) -> PairJson {
    PairJson {
        spine: [0, 1, 2].map(|i| ratfunc_json(spine.component(i))),
        radius: ratfunc_json(radius),
    }
}
