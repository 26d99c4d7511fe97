//! Dupin cyclides: recognition from two spines, canonical frames and
//! symmetry groups.

mod canonical;
mod conic;
mod extrema;
mod frame;

use std::collections::HashMap;

use num_traits::{Signed, Zero};

pub use canonical::{canonical_spines, implicit_eval, table_rows, CyclideType, DupinParams, TableRow};
pub use conic::{classify_conic, ConicInfo, ConicKind, Plane};
pub use extrema::{ratfunc_extrema, ExtremeValue, Extrema};
pub use frame::{dupin_frame, DupinCyclide, DupinFrame, Pair, RadiusFit};

use crate::canal::{
    moebius_from_isometry, radius_condition_poly, verify_conjugation, ContinuousFamily, FamilyKind,
    Symmetry, SymmetryReport,
};
use crate::error::{Error, Result};
use crate::group;
use crate::isometry::{primitive_direction, Isometry};
use crate::moebius::{moebius_like_factors, Moebius};
use crate::linalg::{identity, mat_vec, norm_sq, sub, Vec3};
use crate::ratpoly::{tenth_power, Rat};

/// Whether the cyclide has the larger symmetry group: for Type II the
/// radius along the ellipse ranges over a symmetric interval, for Type III
/// the two radius offsets cancel. Tori never qualify.
pub fn is_super_symmetric(d: &DupinCyclide) -> bool {
    match d.cyclide_type() {
        CyclideType::I => false,
        CyclideType::II => {
            let ell = if d.frame.swapped { &d.pair2 } else { &d.pair1 };
            let e = ratfunc_extrema(&ell.1);
            let (Some(lo), Some(hi)) = (e.min.value(), e.max.value()) else {
                return false;
            };
            let sum = lo + hi;
            if e.min.is_exact() && e.max.is_exact() {
                sum.is_zero()
            } else {
                sum.abs() < tenth_power(30)
            }
        }
        CyclideType::III => {
            let fits = d.frame.radius_fits.as_ref().expect("fits for Type III");
            (&fits[0].alpha + &fits[1].alpha).is_zero()
        }
    }
}

/// Finds `φ` with `f ∘ c_i = c_j ∘ φ`, first among the Möbius-like factors
/// of the radius condition, then from the point correspondence.
struct MoebiusFinder<'a> {
    pairs: [&'a Pair; 2],
    factors: HashMap<(usize, usize), Vec<Moebius>>,
}

impl<'a> MoebiusFinder<'a> {
    fn new(d: &'a DupinCyclide) -> Self {
        Self {
            pairs: d.pairs(),
            factors: HashMap::new(),
        }
    }

    fn find(&mut self, f: &Isometry, i: usize, j: usize) -> Result<Option<Moebius>> {
        let (ci, cj) = (&self.pairs[i].0, &self.pairs[j].0);
        if !self.factors.contains_key(&(i, j)) {
            let r = radius_condition_poly(&self.pairs[i].1, &self.pairs[j].1);
            let cands = if r.is_zero() {
                Vec::new()
            } else {
                moebius_like_factors(&r)?.into_iter().map(|m| m.moebius).collect()
            };
            self.factors.insert((i, j), cands);
        }
        if let Some(phi) = self.factors[&(i, j)].iter().find(|phi| verify_conjugation(f, ci, cj, phi)) {
            return Ok(Some(phi.clone()));
        }
        Ok(moebius_from_isometry(f, ci, cj))
    }
}

/// `x ↦ x + (e₂ - 1) ⟨x - O, û⟩ û + (e₁ - 1) ⟨x - O, n̂⟩ n̂` for orthogonal
/// `u, n`: the torus symmetry at angle zero, rational whenever `u, n` are.
fn axis_reflection(origin: &Vec3, u: &Vec3, n: &Vec3, e1: i64, e2: i64) -> Result<Isometry> {
    let ku = Rat::from_integer((e2 - 1).into()) / norm_sq(u);
    let kn = Rat::from_integer((e1 - 1).into()) / norm_sq(n);
    let mut q = identity();
    for i in 0..3 {
        for j in 0..3 {
            q[i][j] += &ku * &u[i] * &u[j] + &kn * &n[i] * &n[j];
        }
    }
    let b = sub(origin, &mat_vec(&q, origin));
    Isometry::new(q, b)
}

fn missing(tag: char) -> Error {
    Error::NotADupinConfiguration(format!("no reparametrization found for symmetry ({tag})"))
}

/// The symmetry group of a Dupin cyclide. Tori report the four members of
/// the continuous family at angle zero together with the family itself.
pub fn dupin_symmetries(d: &DupinCyclide) -> Result<SymmetryReport> {
    let fr = &d.frame;
    let mut finder = MoebiusFinder::new(d);
    let mut symmetries = Vec::new();
    if fr.cyclide_type == CyclideType::I {
        let family = ContinuousFamily {
            axis_point: fr.origin.clone(),
            axis_direction: primitive_direction(&fr.planes[1].normal),
            kind: FamilyKind::Torus { pose: fr.pose.clone() },
        };
        let (u, n) = (&fr.planes[0].normal, &fr.planes[1].normal);
        for (e1, e2, tag) in [(1, 1, Some('a')), (-1, 1, Some('b')), (1, -1, None), (-1, -1, None)] {
            let f = axis_reflection(&fr.origin, u, n, e1, e2)?;
            let phi1 = finder.find(&f, 0, 0)?.ok_or_else(|| missing(tag.unwrap_or('-')))?;
            let phi2 = finder.find(&f, 1, 1)?.ok_or_else(|| missing(tag.unwrap_or('-')))?;
            symmetries.push(Symmetry {
                isometry: f,
                moebius: phi1,
                moebius_second: Some(phi2),
                swaps_spines: false,
                tag,
            });
        }
        return Ok(SymmetryReport {
            symmetries,
            continuous_family: Some(family),
            group_label: group::Z2_2_X_S1.into(),
        });
    }
    let sup = is_super_symmetric(d);
    let back = fr.pose.inverse();
    for row in table_rows(fr.cyclide_type, sup) {
        let f = Isometry::linear(row.q.clone())?.conjugate_by(&back);
        let (j1, j2) = if row.swaps_spines { (1, 0) } else { (0, 1) };
        let phi1 = finder.find(&f, 0, j1)?.ok_or_else(|| missing(row.tag))?;
        let phi2 = finder.find(&f, 1, j2)?.ok_or_else(|| missing(row.tag))?;
        symmetries.push(Symmetry {
            isometry: f,
            moebius: phi1,
            moebius_second: Some(phi2),
            swaps_spines: row.swaps_spines,
            tag: Some(row.tag),
        });
    }
    let group_label = match (fr.cyclide_type, sup) {
        (CyclideType::II, true) => group::Z2_3,
        (CyclideType::III, true) => group::D4,
        _ => group::Z2_2,
    };
    Ok(SymmetryReport {
        symmetries,
        continuous_family: None,
        group_label: group_label.into(),
    })
}
