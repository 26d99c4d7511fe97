//! Finite groups of isometries: closure checks and isomorphism labels.

use crate::isometry::{numeric_tolerance, Isometry};

pub const TRIVIAL: &str = "trivial";
pub const Z2: &str = "Z2";
pub const Z2_2: &str = "Z2^2";
pub const Z4: &str = "Z4";
pub const Z2_3: &str = "Z2^3";
pub const D4: &str = "D4";
pub const Z2_2_X_S1: &str = "Z2^2 x S1";
pub const CONTINUOUS: &str = "continuous";

/// Equality, with a tolerance when either side is numeric.
pub fn same(a: &Isometry, b: &Isometry) -> bool {
    if a.is_exact() && b.is_exact() {
        a == b
    } else {
        a.distance(b) < numeric_tolerance()
    }
}

fn is_identity(a: &Isometry) -> bool {
    same(a, &Isometry::identity())
}

/// Order of `a`, searching up to `max`.
pub fn element_order(a: &Isometry, max: usize) -> Option<usize> {
    let mut p = a.clone();
    for k in 1..=max {
        if is_identity(&p) {
            return Some(k);
        }
        p = p.compose(a);
    }
    None
}

pub fn contains(set: &[Isometry], x: &Isometry) -> bool {
    set.iter().any(|y| same(x, y))
}

/// Whether `set` contains the identity and is closed under composition and
/// inversion.
pub fn is_group(set: &[Isometry]) -> bool {
    if !set.iter().any(is_identity) {
        return false;
    }
    for a in set {
        if !contains(set, &a.inverse()) {
            return false;
        }
        for b in set {
            if !contains(set, &a.compose(b)) {
                return false;
            }
        }
    }
    true
}

/// Isomorphism type of a finite group given by its elements.
pub fn label(set: &[Isometry]) -> String {
    let n = set.len();
    let orders: Vec<usize> = set
        .iter()
        .map(|a| element_order(a, n.max(1)).unwrap_or(0))
        .collect();
    let count = |k: usize| orders.iter().filter(|&&o| o == k).count();
    let abelian = set
        .iter()
        .all(|a| set.iter().all(|b| same(&a.compose(b), &b.compose(a))));
    match n {
        1 => TRIVIAL.into(),
        2 => Z2.into(),
        4 if count(4) == 0 => Z2_2.into(),
        4 => Z4.into(),
        6 if abelian => "Z6".into(),
        6 => "D3".into(),
        8 if count(8) > 0 => "Z8".into(),
        8 if count(4) == 0 => Z2_3.into(),
        8 if abelian => "Z4 x Z2".into(),
        8 if count(2) == 5 => D4.into(),
        8 => "Q8".into(),
        _ => format!("order {n}"),
    }
}
