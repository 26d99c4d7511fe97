//! Human-readable and JSON reports.

use canalsym::canal::{ContinuousFamily, FamilyKind, Symmetry, SymmetryReport};
use canalsym::dupin::DupinCyclide;
use canalsym::isometry::Isometry;
use canalsym::linalg::{identity, mat_mul, transpose, Vec3};
use canalsym::moebius::Moebius;
use canalsym::ratpoly::{abs, to_f64, Rat};
use serde::{Deserialize, Serialize};

use crate::spec::{rat_json, IsometryJson};

#[derive(Debug, Serialize, Deserialize)]
pub struct SymmetryJson {
    #[serde(flatten)]
    pub isometry: IsometryJson,
    pub moebius: [String; 4],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub moebius_second: Option<[String; 4]>,
    pub swaps_spines: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tag: Option<String>,
    /// `"exact"` or `"numeric"`.
    pub certainty: String,
    /// Largest entry of `Q Qᵀ - I` for numeric symmetries.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FamilyJson {
    pub kind: String,
    pub axis_point: [String; 3],
    pub axis_direction: [String; 3],
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ReportJson {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cyclide_type: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub super_symmetric: Option<bool>,
    pub group: String,
    pub symmetries: Vec<SymmetryJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub continuous_family: Option<FamilyJson>,
}

fn vec_json(v: &Vec3) -> [String; 3] {
    v.clone().map(|x| rat_json(&x))
}

pub fn isometry_json(f: &Isometry) -> IsometryJson {
    IsometryJson {
        q: f.q().clone().map(|row| vec_json(&row)),
        b: vec_json(f.b()),
    }
}

pub fn moebius_json(m: &Moebius) -> [String; 4] {
    m.coeffs().map(rat_json)
}

fn residual(f: &Isometry) -> f64 {
    let q = f.q();
    let d = mat_mul(q, &transpose(q));
    let id = identity();
    let mut worst = Rat::default();
    for i in 0..3 {
        for j in 0..3 {
            worst = worst.max(abs(&(&d[i][j] - &id[i][j])));
        }
    }
    to_f64(&worst)
}

fn symmetry_json(s: &Symmetry) -> SymmetryJson {
    let exact = s.is_exact() && s.moebius_second.as_ref().map_or(true, |m| m.is_exact());
    SymmetryJson {
        isometry: isometry_json(&s.isometry),
        moebius: moebius_json(&s.moebius),
        moebius_second: s.moebius_second.as_ref().map(moebius_json),
        swaps_spines: s.swaps_spines,
        tag: s.tag.map(String::from),
        certainty: if exact { "exact" } else { "numeric" }.into(),
        residual: if exact { None } else { Some(residual(&s.isometry)) },
    }
}

fn family_json(f: &ContinuousFamily) -> FamilyJson {
    FamilyJson {
        kind: match f.kind {
            FamilyKind::Torus { .. } => "torus",
            FamilyKind::Helical => "helical",
        }
        .into(),
        axis_point: vec_json(&f.axis_point),
        axis_direction: vec_json(&f.axis_direction),
    }
}

pub fn report_json(rep: &SymmetryReport, dupin: Option<(&DupinCyclide, bool)>) -> ReportJson {
    ReportJson {
        kind: if dupin.is_some() { "dupin" } else { "canal" }.into(),
        cyclide_type: dupin.map(|(d, _)| d.cyclide_type().to_string()),
        super_symmetric: dupin.map(|(_, s)| s),
        group: rep.group_label.clone(),
        symmetries: rep.symmetries.iter().map(symmetry_json).collect(),
        continuous_family: rep.continuous_family.as_ref().map(family_json),
    }
}

fn fmt_vec(v: &Vec3) -> String {
    format!("({})", v.iter().map(rat_json).collect::<Vec<_>>().join(", "))
}

fn fmt_symmetry(s: &Symmetry) -> String {
    let q = s.isometry.q();
    let rows: Vec<String> = q.iter().map(fmt_vec).collect();
    let mut line = String::new();
    if let Some(t) = s.tag {
        line.push_str(&format!("({t}) "));
    }
    line.push_str(&format!("Q = [{}]  b = {}  phi(t) = {}", rows.join(", "), fmt_vec(s.isometry.b()), s.moebius));
    if let Some(m) = &s.moebius_second {
        line.push_str(&format!("  phi2(t) = {m}"));
    }
    if s.swaps_spines {
        line.push_str("  swaps spines");
    }
    if !s.is_exact() {
        line.push_str(&format!("  [numeric, residual {:.1e}]", residual(&s.isometry)));
    }
    line
}

fn fmt_family(f: &ContinuousFamily) -> String {
    format!(
        "continuous family: rotations about the axis through {} with direction {}",
        fmt_vec(&f.axis_point),
        fmt_vec(&f.axis_direction)
    )
}

pub fn report_text(rep: &SymmetryReport, dupin: Option<(&DupinCyclide, bool)>) -> String {
    let mut out = String::new();
    let n = rep.len();
    let count = format!("{n} symmetr{}", if n == 1 { "y" } else { "ies" });
    match dupin {
        Some((d, sup)) => {
            let flag = if sup { "super-symmetric" } else { "not super-symmetric" };
            out.push_str(&format!("Type {}, {flag}, group {}, {count}\n", d.cyclide_type(), rep.group_label));
        }
        None => out.push_str(&format!("group {}, {count}\n", rep.group_label)),
    }
    for s in &rep.symmetries {
        out.push_str(&format!("  {}\n", fmt_symmetry(s)));
    }
    if let Some(f) = &rep.continuous_family {
        out.push_str(&format!("{}\n", fmt_family(f)));
    }
    out
}
