//! Global extrema of a real rational function over the projective line.

use num_traits::{Signed, Zero};

use crate::ratpoly::{pow2, real_roots, simplest_between, IsolatedRoot, Rat, RatFunc, UniPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtremeValue {
    NegInfinity,
    /// `exact == false` marks a value known to about 120 bits.
    Finite { value: Rat, exact: bool },
    PosInfinity,
}

impl ExtremeValue {
    pub fn value(&self) -> Option<&Rat> {
        match self {
            ExtremeValue::Finite { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ExtremeValue::Finite { exact: true, .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extrema {
    pub min: ExtremeValue,
    pub max: ExtremeValue,
}

fn exact(value: Rat) -> ExtremeValue {
    ExtremeValue::Finite { value, exact: true }
}

fn has_root_in(g: &UniPoly, lo: &Rat, hi: &Rat) -> bool {
    if g.is_constant() {
        return false;
    }
    let a = g.eval(lo);
    let b = g.eval(hi);
    a.is_zero() || b.is_zero() || a.is_negative() != b.is_negative()
}

/// Value of `r = a/b` at a critical point isolated by `root`. An irrational
/// critical point still has an exact value when `a - v b` has a double root
/// there for a small-height rational `v`; that is tested exactly.
fn critical_value(r: &RatFunc, root: &IsolatedRoot) -> ExtremeValue {
    let mut root = root.clone();
    if let Some(t) = root.rational_value() {
        return exact(r.eval(&t).expect("not a pole"));
    }
    let root = root.refined(&pow2(-200));
    let approx = r.eval(&root.midpoint()).expect("not a pole");
    let eps = pow2(-120);
    let cand = simplest_between(&(&approx - &eps), &(&approx + &eps));
    let h = r.num() - &r.den().scale(&cand);
    let g = h.gcd(&h.derivative());
    if has_root_in(&g.squarefree_part(), root.lo(), root.hi()) {
        exact(cand)
    } else {
        ExtremeValue::Finite {
            value: approx,
            exact: false,
        }
    }
}

/// Sign of `r` on both sides of a pole isolated by `root`.
fn pole_signs(r: &RatFunc, root: &IsolatedRoot) -> (bool, bool) {
    let root = root.refined(&pow2(-100));
    let step = pow2(-100);
    let left = r.eval(&(root.lo() - &step)).expect("off the pole");
    let right = r.eval(&(root.hi() + &step)).expect("off the pole");
    (left.is_positive(), right.is_positive())
}

/// Global minimum and maximum of `r` over `ℝ ∪ {∞}`, with `±∞` where `r`
/// is unbounded.
pub fn ratfunc_extrema(r: &RatFunc) -> Extrema {
    if let Some(c) = r.constant_value() {
        return Extrema {
            min: exact(c.clone()),
            max: exact(c),
        };
    }
    let (a, b) = (r.num(), r.den());
    let mut values: Vec<ExtremeValue> = Vec::new();
    let (mut down, mut up) = (false, false);
    let (da, db) = (a.deg(), b.deg());
    if da > db {
        let s = a.lc().is_positive() == b.lc().is_positive();
        let odd = (da - db) % 2 == 1;
        for pos in [s, s != odd] {
            if pos {
                up = true;
            } else {
                down = true;
            }
        }
    } else if da == db {
        values.push(exact(a.lc() / b.lc()));
    } else {
        values.push(exact(Rat::zero()));
    }

    let poles = if b.is_constant() {
        Vec::new()
    } else {
        real_roots(b, &pow2(-53)).expect("nonzero denominator")
    };
    for p in &poles {
        let (l, rr) = pole_signs(r, p);
        for pos in [l, rr] {
            if pos {
                up = true;
            } else {
                down = true;
            }
        }
    }

    let n = &(&a.derivative() * b) - &(a * &b.derivative());
    if !n.is_zero() && !n.is_constant() {
        let shared = n.gcd(b);
        for root in real_roots(&n, &pow2(-53)).expect("nonzero numerator") {
            if has_root_in(&shared, root.lo(), root.hi()) || (root.is_exact() && b.eval(root.lo()).is_zero()) {
                continue;
            }
            values.push(critical_value(r, &root));
        }
    }

    let key = |v: &ExtremeValue| v.value().cloned().expect("finite");
    let min = if down {
        ExtremeValue::NegInfinity
    } else {
        values.iter().min_by_key(|v| key(v)).cloned().expect("a finite value")
    };
    let max = if up {
        ExtremeValue::PosInfinity
    } else {
        values.iter().max_by_key(|v| key(v)).cloned().expect("a finite value")
    };
    Extrema { min, max }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{int, rat};

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn ellipse_radius_extrema() {
        // c - f (1 - t²)/(1 + t²) with c = 0, f = 3
        let r = RatFunc::new(&p(&[-3, 0, 3]), &p(&[1, 0, 1])).unwrap();
        let e = ratfunc_extrema(&r);
        assert_eq!(e.min, exact(int(-3)));
        assert_eq!(e.max, exact(int(3)));
    }

    #[test]
    fn bump_and_constant() {
        let r = RatFunc::new(&p(&[0, 0, 1]), &p(&[1, 0, 0, 0, 1])).unwrap();
        let e = ratfunc_extrema(&r);
        assert_eq!(e.min, exact(int(0)));
        assert_eq!(e.max, exact(rat(1, 2)));
        let c = ratfunc_extrema(&RatFunc::constant(rat(2, 7)));
        assert_eq!(c.min, exact(rat(2, 7)));
    }

    #[test]
    fn unbounded_cases() {
        let cubic = RatFunc::poly(p(&[0, 0, 0, 1]));
        let e = ratfunc_extrema(&cubic);
        assert_eq!((e.min, e.max), (ExtremeValue::NegInfinity, ExtremeValue::PosInfinity));
        let inv_sq = RatFunc::new(&p(&[1]), &p(&[0, 0, 1])).unwrap();
        let e = ratfunc_extrema(&inv_sq);
        assert_eq!(e.max, ExtremeValue::PosInfinity);
        assert_eq!(e.min, exact(int(0)));
    }

    #[test]
    fn irrational_critical_point_with_rational_value() {
        // (t² - 2)² / (t⁴ + 1) has minima 0 at t = ±√2.
        let num = &p(&[-2, 0, 1]) * &p(&[-2, 0, 1]);
        let r = RatFunc::new(&num, &p(&[1, 0, 0, 0, 1])).unwrap();
        assert_eq!(ratfunc_extrema(&r).min, exact(int(0)));
    }
}
