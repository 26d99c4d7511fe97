//! Real root isolation by Descartes' rule of signs with bisection
//! (Vincent–Collins–Akritas), followed by exact-sign bisection refinement.
//!
//! The input is split into square-free parts (Yun); each part is made
//! primitive over the integers and its roots in a Cauchy bound interval are
//! isolated. Interval endpoints are dyadic rationals.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rat::{pow2, Rat};
use super::unipoly::{make_primitive, UniPoly};
use crate::error::{Error, Result};

/// Square-free primitive integer polynomial, ascending coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly(pub Vec<BigInt>);

impl IntPoly {
    pub fn from_unipoly(p: &UniPoly) -> Self {
        IntPoly(p.primitive_ints())
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn lc(&self) -> &BigInt {
        self.0.last().expect("nonzero polynomial")
    }

    /// Sign of the value at `x`.
    pub fn sign_at(&self, x: &Rat) -> i32 {
        let n = x.numer();
        let d = x.denom();
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        // Homogeneous Horner: sum a_i n^i d^(deg-i), same sign as p(n/d).
        for c in self.0.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        if acc.is_zero() {
            0
        } else if acc.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + Rat::from_integer(c.clone());
        }
        acc
    }

    fn derivative(&self) -> IntPoly {
        IntPoly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }
}

/// Default isolation width, `2^-53`.
pub fn default_width() -> Rat {
    pow2(-53)
}

/// A real root of a polynomial, isolated in a closed interval `[lo, hi]`.
///
/// The open interval contains exactly one root of the square-free factor
/// `poly`; `lo == hi` marks an exactly known rational root.
#[derive(Clone, Debug)]
pub struct IsolatedRoot {
    lo: Rat,
    hi: Rat,
    multiplicity: usize,
    poly: Arc<IntPoly>,
    /// Sign of `poly` just to the right of `lo`.
    sign_lo: i32,
}

impl IsolatedRoot {
    fn new(lo: Rat, hi: Rat, multiplicity: usize, poly: Arc<IntPoly>) -> Self {
        let sign_lo = if lo == hi {
            0
        } else {
            match poly.sign_at(&lo) {
                0 => poly.derivative().sign_at(&lo),
                s => s,
            }
        };
        Self {
            lo,
            hi,
            multiplicity,
            poly,
            sign_lo,
        }
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(BigInt::from(2))
    }

    pub fn to_f64(&self) -> f64 {
        super::rat::to_f64(&self.midpoint())
    }

    /// The square-free factor whose root this is.
    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    /// One bisection step.
    pub fn bisect(&mut self) {
        if self.is_exact() {
            return;
        }
        let m = self.midpoint();
        match self.poly.sign_at(&m) {
            0 => {
                self.lo = m.clone();
                self.hi = m;
                self.sign_lo = 0;
            }
            s if s == self.sign_lo => self.lo = m,
            _ => self.hi = m,
        }
    }

    /// Shrinks the interval until its width is at most `width`.
    pub fn refine(&mut self, width: &Rat) {
        while !self.is_exact() && &self.width() > width {
            self.bisect();
        }
    }

    pub fn refined(&self, width: &Rat) -> Self {
        let mut r = self.clone();
        r.refine(width);
        r
    }

    /// The root itself when it is rational. Rational roots of a primitive
    /// integer polynomial have denominators dividing its leading coefficient.
    pub fn rational_value(&mut self) -> Option<Rat> {
        if self.is_exact() {
            return Some(self.lo.clone());
        }
        let lc = self.poly.lc().abs();
        let step = Rat::new(BigInt::one(), lc.clone());
        self.refine(&step);
        if self.is_exact() {
            return Some(self.lo.clone());
        }
        let lcr = Rat::from_integer(lc.clone());
        let m_lo = (&self.lo * &lcr).floor().to_integer();
        let m_hi = (&self.hi * &lcr).ceil().to_integer();
        let mut m = m_lo;
        while m <= m_hi {
            let cand = Rat::new(m.clone(), lc.clone());
            if cand > self.lo && cand < self.hi && self.poly.sign_at(&cand) == 0 {
                self.lo = cand.clone();
                self.hi = cand.clone();
                self.sign_lo = 0;
                return Some(cand);
            }
            m += 1;
        }
        None
    }
}

/// Isolates all real roots of `p` in disjoint intervals of width at most
/// `width`, one interval per distinct root, sorted increasingly.
pub fn real_roots(p: &UniPoly, width: &Rat) -> Result<Vec<IsolatedRoot>> {
    if p.is_zero() {
        return Err(Error::DegenerateInput("real_roots of the zero polynomial".into()));
    }
    let mut roots = Vec::new();
    for (i, f) in p.yun().iter().enumerate() {
        if f.is_constant() {
            continue;
        }
        let ip = Arc::new(IntPoly::from_unipoly(f));
        for (lo, hi) in isolate(&ip.0) {
            roots.push(IsolatedRoot::new(lo, hi, i + 1, ip.clone()));
        }
    }
    roots.sort_by(|a, b| a.lo.cmp(&b.lo).then(a.hi.cmp(&b.hi)));
    // Roots of different square-free parts are distinct; refine until apart.
    loop {
        let mut clash = None;
        for k in 1..roots.len() {
            if roots[k - 1].hi >= roots[k].lo {
                clash = Some(k);
                break;
            }
        }
        match clash {
            None => break,
            Some(k) => {
                roots[k - 1].bisect();
                roots[k].bisect();
                roots.sort_by(|a, b| a.lo.cmp(&b.lo).then(a.hi.cmp(&b.hi)));
            }
        }
    }
    for r in roots.iter_mut() {
        r.refine(width);
    }
    Ok(roots)
}

/// Taylor shift `q(x) = p(x + 1)`.
fn taylor_shift_one(p: &[BigInt]) -> Vec<BigInt> {
    let mut a = p.to_vec();
    let n = a.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = a[j + 1].clone();
            a[j] += t;
        }
    }
    a
}

fn sign_variations(p: &[BigInt]) -> usize {
    let mut count = 0;
    let mut last = 0i32;
    for c in p {
        let s = if c.is_zero() {
            continue;
        } else if c.is_positive() {
            1
        } else {
            -1
        };
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Descartes bound for roots in (0, 1).
fn descartes_01(p: &[BigInt]) -> usize {
    let rev: Vec<BigInt> = p.iter().rev().cloned().collect();
    sign_variations(&taylor_shift_one(&rev))
}

fn isolate(p: &[BigInt]) -> Vec<(Rat, Rat)> {
    let n = p.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    // Cauchy bound 1 + max|a_i / a_n| < 2^k.
    let lc = p[n].abs();
    let mx = p[..n].iter().map(|c| c.abs()).max().unwrap_or_default();
    let ratio = (&mx + &lc - BigInt::one()) / &lc + BigInt::one();
    let k = ratio.bits() as i64 + 1;
    let bound = pow2(k);

    // P(x) = p(-B + 2B x): shift by -B, then scale by 2B.
    let big_b = BigInt::one() << (k as u64);
    let mut shifted = p.to_vec();
    // p(x - B) via repeated synthetic steps.
    for i in 0..=n {
        for j in (i..n).rev() {
            let t = &shifted[j + 1] * &big_b;
            shifted[j] -= t;
        }
    }
    let w = BigInt::one() << (k as u64 + 1);
    let mut wp = BigInt::one();
    for c in shifted.iter_mut() {
        *c *= &wp;
        wp *= &w;
    }
    make_primitive(&mut shifted);

    let mut out = Vec::new();
    let mut stack = vec![(shifted, -bound.clone(), bound)];
    let two = Rat::from_integer(BigInt::from(2));
    while let Some((q, lo, hi)) = stack.pop() {
        if q.len() <= 1 {
            continue;
        }
        let v = descartes_01(&q);
        if v == 0 {
            continue;
        }
        if v == 1 {
            out.push((lo, hi));
            continue;
        }
        let mid = (&lo + &hi) / &two;
        let m = q.len() - 1;
        // Left half: 2^m q(x/2).
        let mut left: Vec<BigInt> = q
            .iter()
            .enumerate()
            .map(|(i, c)| c << (m - i))
            .collect();
        let mut right = taylor_shift_one(&left);
        if right[0].is_zero() {
            out.push((mid.clone(), mid.clone()));
            right.remove(0);
            // Deflate the left half by (x - 1).
            let mut quo = vec![BigInt::zero(); left.len() - 1];
            let mut carry = BigInt::zero();
            for i in (0..left.len()).rev() {
                let c = &left[i] + &carry;
                if i > 0 {
                    quo[i - 1] = c.clone();
                }
                carry = c;
            }
            left = quo;
        }
        make_primitive(&mut left);
        make_primitive(&mut right);
        stack.push((right, mid.clone(), hi));
        stack.push((left, lo, mid));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{int, rat, to_f64};

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn sqrt_two_pair() {
        let w = default_width();
        let rs = real_roots(&p(&[-2, 0, 1]), &w).unwrap();
        assert_eq!(rs.len(), 2);
        for (r, s) in rs.iter().zip([-1.0, 1.0]) {
            assert!(r.width() <= w);
            assert!((r.to_f64() - s * 2f64.sqrt()).abs() < 1e-15);
            assert!(r.lo() <= r.hi());
        }
    }

    #[test]
    fn no_real_roots() {
        assert!(real_roots(&p(&[1, 0, 1]), &default_width()).unwrap().is_empty());
    }

    #[test]
    fn monomial_root_at_zero() {
        // 4 f t with f = 3.
        let rs = real_roots(&p(&[0, 12]), &default_width()).unwrap();
        assert_eq!(rs.len(), 1);
        assert!(rs[0].is_exact());
        assert_eq!(rs[0].lo(), &int(0));
    }

    #[test]
    fn multiplicities_and_rational_roots() {
        // (3t - 1)^2 (t + 2) (t^2 - 3)
        let f = &(&p(&[-1, 3]).pow(2) * &p(&[2, 1])) * &p(&[-3, 0, 1]);
        let mut rs = real_roots(&f, &default_width()).unwrap();
        assert_eq!(rs.len(), 4);
        let mults: Vec<usize> = rs.iter().map(|r| r.multiplicity()).collect();
        assert_eq!(mults, vec![1, 1, 2, 1]);
        assert_eq!(rs[0].rational_value(), Some(int(-2)));
        assert_eq!(rs[1].rational_value(), None);
        assert_eq!(rs[2].rational_value(), Some(rat(1, 3)));
        assert!((to_f64(rs[3].lo()) - 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        assert!(real_roots(&UniPoly::zero(), &default_width()).is_err());
    }

    #[test]
    fn many_close_roots() {
        // prod (t - k/7) for k = -5..5 plus an irrational pair.
        let mut f = p(&[-5, 0, 1]);
        for k in -5..=5 {
            f = &f * &UniPoly::linear(int(1), rat(-k, 7));
        }
        let rs = real_roots(&f, &pow2(-80)).unwrap();
        assert_eq!(rs.len(), 13);
        for w in rs.windows(2) {
            assert!(w[0].hi() < w[1].lo());
        }
    }
}
