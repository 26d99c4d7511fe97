//! Reduced rational functions with monic denominators.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rat::Rat;
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// `num / den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

/// Reduced, den-monic representative of `a / b`.
pub fn normalize_ratfunc(a: &UniPoly, b: &UniPoly) -> Result<RatFunc> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if a.is_zero() {
        return Ok(RatFunc::zero());
    }
    let (num, den) = if b.is_constant() {
        (a.clone(), b.clone())
    } else {
        let g = a.gcd(b);
        if g.is_constant() {
            (a.clone(), b.clone())
        } else {
            (a.div_exact(&g).unwrap(), b.div_exact(&g).unwrap())
        }
    };
    let inv = den.lc().recip();
    Ok(RatFunc {
        num: num.scale(&inv),
        den: den.scale(&inv),
    })
}

impl RatFunc {
    pub fn new(num: &UniPoly, den: &UniPoly) -> Result<Self> {
        normalize_ratfunc(num, den)
    }

    pub fn zero() -> Self {
        Self {
            num: UniPoly::zero(),
            den: UniPoly::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        Self {
            num: UniPoly::constant(c),
            den: UniPoly::one(),
        }
    }

    pub fn poly(p: UniPoly) -> Self {
        Self {
            num: p,
            den: UniPoly::one(),
        }
    }

    /// The identity function `t`.
    pub fn t() -> Self {
        Self::poly(UniPoly::x())
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// Value of a constant function.
    pub fn constant_value(&self) -> Option<Rat> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn eval(&self, x: &Rat) -> Result<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.num.eval_f64(x) / self.den.eval_f64(x)
    }

    pub fn derivative(&self) -> Self {
        if self.den.is_constant() {
            return Self::poly(self.num.derivative());
        }
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        normalize_ratfunc(&n, &(&self.den * &self.den)).expect("nonzero denominator")
    }

    pub fn nth_derivative(&self, k: usize) -> Self {
        let mut f = self.clone();
        for _ in 0..k {
            f = f.derivative();
        }
        f
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<Self> {
        normalize_ratfunc(&self.den, &self.num)
    }

    pub fn pow(&self, e: usize) -> Self {
        Self {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// `f((a t + b) / (c t + d))`, requiring `a d - b c != 0`.
    pub fn compose_moebius(&self, a: &Rat, b: &Rat, c: &Rat, d: &Rat) -> Self {
        let n = self.num.deg().max(self.den.deg());
        let num = self.num.homogeneous_compose(a, b, c, d, n);
        let den = self.den.homogeneous_compose(a, b, c, d, n);
        normalize_ratfunc(&num, &den).expect("Moebius image of a nonzero polynomial is nonzero")
    }

    /// `f(g(t))` for a rational function `g`.
    pub fn compose(&self, g: &RatFunc) -> Result<Self> {
        let n = self.num.deg().max(self.den.deg());
        let hom = |p: &UniPoly| {
            let mut acc = UniPoly::zero();
            let mut gn = UniPoly::one();
            let dpows: Vec<UniPoly> = (0..=n).map(|k| g.den.pow(k)).collect();
            for (i, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    acc = acc + (&gn * &dpows[n - i]).scale(c);
                }
                gn = &gn * &g.num;
            }
            acc
        };
        normalize_ratfunc(&hom(&self.num), &hom(&self.den))
    }

    /// `max(deg num, deg den)`.
    pub fn degree(&self) -> usize {
        self.num.deg().max(self.den.deg())
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.den.is_one_poly() {
            self.num.fmt_var(var)
        } else {
            format!("({}) / ({})", self.num.fmt_var(var), self.den.fmt_var(var))
        }
    }
}

impl UniPoly {
    fn is_one_poly(&self) -> bool {
        self.coeffs().len() == 1 && self.coeffs()[0].is_one()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("t"))
    }
}

impl From<UniPoly> for RatFunc {
    fn from(p: UniPoly) -> Self {
        Self::poly(p)
    }
}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return normalize_ratfunc(&(&self.num + &rhs.num), &self.den).unwrap();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let g = self.den.gcd(&rhs.den);
        let a = self.den.div_exact(&g).unwrap();
        let b = rhs.den.div_exact(&g).unwrap();
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        let den = &(&a * &b) * &g;
        normalize_ratfunc(&num, &den).unwrap()
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        // Cross-cancel before multiplying to keep degrees small.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = rhs.den.div_exact(&g1).unwrap();
        let n2 = rhs.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let inv = den.lc().recip();
        RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }
}

impl Div<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self * &rhs.recip().expect("division by the zero rational function")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                (&self).$m(rhs)
            }
        }
        impl $tr<RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{int, rat};

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn normalization_examples() {
        let f = normalize_ratfunc(&p(&[0, 1, 1]), &p(&[0, 1])).unwrap();
        assert_eq!((f.num(), f.den()), (&p(&[1, 1]), &UniPoly::one()));
        let f = normalize_ratfunc(&p(&[0, 2]), &p(&[4])).unwrap();
        assert_eq!(f.num(), &UniPoly::new(vec![int(0), rat(1, 2)]));
        // c - f (1 - t^2)/(1 + t^2) at c = 0, f = 3.
        let r = &RatFunc::constant(int(0))
            - &normalize_ratfunc(&p(&[3, 0, -3]), &p(&[1, 0, 1])).unwrap();
        assert_eq!((r.num(), r.den()), (&p(&[-3, 0, 3]), &p(&[1, 0, 1])));
        assert_eq!(
            normalize_ratfunc(&p(&[1]), &UniPoly::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn derivative_quotient_rule() {
        let r = normalize_ratfunc(&p(&[0, 0, 1]), &p(&[1, 0, 0, 0, 1])).unwrap();
        let d = r.derivative();
        // (2t - 2t^5) / (t^4+1)^2
        let expect = normalize_ratfunc(
            &p(&[0, 2, 0, 0, 0, -2]),
            &(&p(&[1, 0, 0, 0, 1]) * &p(&[1, 0, 0, 0, 1])),
        )
        .unwrap();
        assert_eq!(d, expect);
    }

    #[test]
    fn moebius_composition() {
        let r = normalize_ratfunc(&p(&[0, 0, 1]), &p(&[1, 0, 0, 0, 1])).unwrap();
        let inv = r.compose_moebius(&int(0), &int(1), &int(1), &int(0));
        assert_eq!(inv, r);
        let g = RatFunc::new(&p(&[1]), &p(&[0, 1])).unwrap();
        assert_eq!(r.compose(&g).unwrap(), r);
    }
}
