//! Sparse bivariate polynomials in `(t, u)`.
//!
//! Terms are keyed internally by `(deg_u, deg_t)` so that the map order is the
//! lexicographic order with `u > t`. The public API speaks `(deg_t, deg_u)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rat::{format_rat, Rat};
use super::unipoly::UniPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Mono {
    u: u32,
    t: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<Mono, Rat>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Rat)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for ((dt, du), c) in terms {
            p.add_term(Mono { u: du, t: dt }, c);
        }
        p
    }

    /// Polynomial in `t` only.
    pub fn from_t(p: &UniPoly) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| ((k as u32, 0), c.clone())),
        )
    }

    /// Polynomial in `u` only.
    pub fn from_u(p: &UniPoly) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| ((0, k as u32), c.clone())),
        )
    }

    /// `p(t) * q(u)`.
    pub fn outer(p: &UniPoly, q: &UniPoly) -> Self {
        let mut out = Self::zero();
        for (i, a) in p.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in q.coeffs().iter().enumerate() {
                if !b.is_zero() {
                    out.terms.insert(Mono { u: j as u32, t: i as u32 }, a * b);
                }
            }
        }
        out
    }

    fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, deg_t: u32, deg_u: u32) -> Rat {
        self.terms
            .get(&Mono { u: deg_u, t: deg_t })
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// Terms as `((deg_t, deg_u), coefficient)` in lex order with `u > t`.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Rat)> {
        self.terms.iter().map(|(m, c)| ((m.t, m.u), c))
    }

    pub fn deg_t(&self) -> u32 {
        self.terms.keys().map(|m| m.t).max().unwrap_or(0)
    }

    pub fn deg_u(&self) -> u32 {
        self.terms.keys().map(|m| m.u).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    /// Coefficients as polynomials in `t`, indexed by the power of `u`.
    pub fn coeffs_in_u(&self) -> Vec<UniPoly> {
        let du = self.deg_u() as usize;
        let mut rows: Vec<Vec<Rat>> = vec![Vec::new(); du + 1];
        for (m, c) in &self.terms {
            let row = &mut rows[m.u as usize];
            if row.len() <= m.t as usize {
                row.resize(m.t as usize + 1, Rat::zero());
            }
            row[m.t as usize] = c.clone();
        }
        if self.is_zero() {
            return Vec::new();
        }
        rows.into_iter().map(UniPoly::new).collect()
    }

    /// Leading coefficient with respect to `u`, as a polynomial in `t`.
    pub fn lc_u(&self) -> UniPoly {
        self.coeffs_in_u().pop().unwrap_or_else(UniPoly::zero)
    }

    /// `R(t0, u)` as a polynomial in `u`.
    pub fn eval_t(&self, t0: &Rat) -> UniPoly {
        let rows = self.coeffs_in_u();
        UniPoly::new(rows.iter().map(|p| p.eval(t0)).collect())
    }

    /// `R(t, u0)` as a polynomial in `t`.
    pub fn eval_u(&self, u0: &Rat) -> UniPoly {
        self.swap().eval_t(u0)
    }

    pub fn eval(&self, t0: &Rat, u0: &Rat) -> Rat {
        self.eval_t(t0).eval(u0)
    }

    /// Exchanges the roles of `t` and `u`.
    pub fn swap(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Mono { u: m.t, t: m.u }, c.clone()))
                .collect(),
        }
    }

    /// `R(t, (a t + b)/(c t + d)) * (c t + d)^deg_u(R)`.
    pub fn substitute_u_moebius(&self, a: &Rat, b: &Rat, c: &Rat, d: &Rat) -> UniPoly {
        let rows = self.coeffs_in_u();
        if rows.is_empty() {
            return UniPoly::zero();
        }
        let n = rows.len() - 1;
        let num = UniPoly::linear(a.clone(), b.clone());
        let den = UniPoly::linear(c.clone(), d.clone());
        let mut acc = UniPoly::zero();
        let mut num_pow = UniPoly::one();
        let den_pows: Vec<UniPoly> = {
            let mut v = vec![UniPoly::one()];
            for _ in 0..n {
                let next = v.last().unwrap() * &den;
                v.push(next);
            }
            v
        };
        for (j, row) in rows.iter().enumerate() {
            if !row.is_zero() {
                acc = acc + &(row * &num_pow) * &den_pows[n - j];
            }
            num_pow = &num_pow * &num;
        }
        acc
    }

    /// Single-divisor division in lex order with `u > t`:
    /// `self = q * f + r` with no term of `r` divisible by the leading term of
    /// `f`. For one divisor, `r = 0` exactly when `f` divides `self`.
    pub fn div_rem(&self, f: &BiPoly) -> (BiPoly, BiPoly) {
        assert!(!f.is_zero(), "bivariate division by zero");
        let (&lm, lc) = f.terms.iter().next_back().unwrap();
        let lc_inv = lc.recip();
        let mut p = self.clone();
        let mut q = BiPoly::zero();
        let mut r = BiPoly::zero();
        while let Some((&m, c)) = p.terms.iter().next_back() {
            if m.u >= lm.u && m.t >= lm.t {
                let k = c * &lc_inv;
                let shift = Mono {
                    u: m.u - lm.u,
                    t: m.t - lm.t,
                };
                for (fm, fc) in &f.terms {
                    p.add_term(
                        Mono {
                            u: fm.u + shift.u,
                            t: fm.t + shift.t,
                        },
                        -(&k * fc),
                    );
                }
                q.add_term(shift, k);
            } else {
                let c = c.clone();
                p.terms.remove(&m);
                r.terms.insert(m, c);
            }
        }
        (q, r)
    }

    /// Quotient when `f` divides `self`.
    pub fn div_exact(&self, f: &BiPoly) -> Option<BiPoly> {
        let (q, r) = self.div_rem(f);
        r.is_zero().then_some(q)
    }

    /// Multiple with integer coefficients, unit content and positive leading term.
    pub fn primitive(&self) -> BiPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let flat = UniPoly::new(self.terms.values().cloned().collect());
        // Reuse the univariate content computation on the coefficient list.
        let ints = {
            let mut l = num_bigint::BigInt::one();
            for c in flat.coeffs() {
                l = num_integer::Integer::lcm(&l, c.denom());
            }
            let mut g = num_bigint::BigInt::zero();
            for c in flat.coeffs() {
                g = num_integer::Integer::gcd(&g, &(c * Rat::from_integer(l.clone())).to_integer());
            }
            let mut s = Rat::new(l, g);
            if self.terms.values().next_back().unwrap().is_negative() {
                s = -s;
            }
            s
        };
        self.scale(&ints)
    }

    pub fn max_abs_coeff(&self) -> Rat {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rat::zero)
    }
}

/// Exact divisibility test: true iff `R = F * G` for some polynomial `G`.
pub fn bipoly_divides(f: &BiPoly, r: &BiPoly) -> bool {
    assert!(!f.is_zero(), "divisor must be nonzero");
    r.div_rem(f).1.is_zero()
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mut factors = Vec::new();
            if !mag.is_one() || (m.u == 0 && m.t == 0) {
                factors.push(format_rat(&mag));
            }
            for (v, e) in [("u", m.u), ("t", m.t)] {
                match e {
                    0 => {}
                    1 => factors.push(v.to_string()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(
                    Mono {
                        u: ma.u + mb.u,
                        t: ma.t + mb.t,
                    },
                    ca * cb,
                );
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: BiPoly) -> BiPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: &BiPoly) -> BiPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
