//! Möbius transformations `t -> (αt + β)/(γt + δ)` and the search for
//! bilinear ("Möbius-like") factors `u(γt + δ) - (αt + β)` of a bivariate
//! polynomial.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::nullspace;
use crate::ratpoly::{
    bipoly_divides, default_width, format_rat, int, pow2, real_roots, round_to_bits,
    tenth_power, to_f64, BiPoly, IsolatedRoot, Rat, UniPoly,
};

/// Möbius transformation stored projectively, scaled so that the first
/// nonzero coefficient of `(α, β, γ, δ)` is 1.
///
/// `exact == false` marks coefficients that are rational approximations of
/// real algebraic numbers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Moebius {
    alpha: Rat,
    beta: Rat,
    gamma: Rat,
    delta: Rat,
    exact: bool,
}

impl Moebius {
    pub fn new(alpha: Rat, beta: Rat, gamma: Rat, delta: Rat) -> Result<Self> {
        Self::build(alpha, beta, gamma, delta, true)
    }

    pub fn new_numeric(alpha: Rat, beta: Rat, gamma: Rat, delta: Rat) -> Result<Self> {
        Self::build(alpha, beta, gamma, delta, false)
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(int(a), int(b), int(c), int(d))
    }

    fn build(alpha: Rat, beta: Rat, gamma: Rat, delta: Rat, exact: bool) -> Result<Self> {
        if (&alpha * &delta - &beta * &gamma).is_zero() {
            return Err(Error::DegenerateInput(
                "Moebius coefficients with alpha*delta - beta*gamma = 0".into(),
            ));
        }
        let lead = [&alpha, &beta, &gamma, &delta]
            .into_iter()
            .find(|c| !c.is_zero())
            .unwrap()
            .recip();
        Ok(Self {
            alpha: alpha * &lead,
            beta: beta * &lead,
            gamma: gamma * &lead,
            delta: delta * &lead,
            exact,
        })
    }

    pub fn identity() -> Self {
        Self::from_ints(1, 0, 0, 1).unwrap()
    }

    /// `t -> -t`.
    pub fn negation() -> Self {
        Self::from_ints(-1, 0, 0, 1).unwrap()
    }

    /// `t -> 1/t`.
    pub fn reciprocal() -> Self {
        Self::from_ints(0, 1, 1, 0).unwrap()
    }

    /// `t -> -1/t`.
    pub fn neg_reciprocal() -> Self {
        Self::from_ints(0, -1, 1, 0).unwrap()
    }

    /// `t -> 1 - t`.
    pub fn reflect_unit() -> Self {
        Self::from_ints(-1, 1, 0, 1).unwrap()
    }

    pub fn alpha(&self) -> &Rat {
        &self.alpha
    }
    pub fn beta(&self) -> &Rat {
        &self.beta
    }
    pub fn gamma(&self) -> &Rat {
        &self.gamma
    }
    pub fn delta(&self) -> &Rat {
        &self.delta
    }

    pub fn coeffs(&self) -> [&Rat; 4] {
        [&self.alpha, &self.beta, &self.gamma, &self.delta]
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn is_identity(&self) -> bool {
        self.beta.is_zero() && self.gamma.is_zero() && self.alpha == self.delta
    }

    /// `(αt + β)/(γt + δ)`.
    pub fn apply(&self, t: &Rat) -> Result<Rat> {
        let den = &self.gamma * t + &self.delta;
        if den.is_zero() {
            return Err(Error::PoleAtInput);
        }
        Ok((&self.alpha * t + &self.beta) / den)
    }

    pub fn apply_f64(&self, t: f64) -> f64 {
        (to_f64(&self.alpha) * t + to_f64(&self.beta)) / (to_f64(&self.gamma) * t + to_f64(&self.delta))
    }

    /// `self ∘ other`, i.e. `t -> self(other(t))`.
    pub fn compose(&self, other: &Moebius) -> Moebius {
        let (a, b, c, d) = (&self.alpha, &self.beta, &self.gamma, &self.delta);
        let (e, f, g, h) = (&other.alpha, &other.beta, &other.gamma, &other.delta);
        Self::build(
            a * e + b * g,
            a * f + b * h,
            c * e + d * g,
            c * f + d * h,
            self.exact && other.exact,
        )
        .expect("product of invertible matrices is invertible")
    }

    pub fn inverse(&self) -> Moebius {
        Self::build(
            self.delta.clone(),
            -self.beta.clone(),
            -self.gamma.clone(),
            self.alpha.clone(),
            self.exact,
        )
        .expect("inverse of an invertible matrix")
    }

    /// The bilinear form `u(γt + δ) - (αt + β)`, with sign chosen so that the
    /// leading term (lex order, `u > t`) is positive.
    pub fn to_bilinear(&self) -> BiPoly {
        let f = BiPoly::from_terms([
            ((1, 1), self.gamma.clone()),
            ((0, 1), self.delta.clone()),
            ((1, 0), -self.alpha.clone()),
            ((0, 0), -self.beta.clone()),
        ]);
        let lead_negative = f.terms().last().is_some_and(|(_, c)| c.is_negative());
        if lead_negative {
            -&f
        } else {
            f
        }
    }

    /// Max-norm distance between the normalized coefficient vectors.
    pub fn projective_distance(&self, other: &Moebius) -> Rat {
        self.coeffs()
            .iter()
            .zip(other.coeffs())
            .map(|(a, b)| (*a - b).abs())
            .max()
            .unwrap()
    }

    fn sort_key(&self) -> [&Rat; 4] {
        self.coeffs()
    }
}

impl PartialOrd for Moebius {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Moebius {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .exact
            .cmp(&self.exact)
            .then_with(|| self.sort_key().cmp(&other.sort_key()))
    }
}

impl fmt::Display for Moebius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Show with a positive leading denominator coefficient.
        let flip = if self.gamma.is_zero() {
            self.delta.is_negative()
        } else {
            self.gamma.is_negative()
        };
        let s = |x: &Rat| if flip { -x.clone() } else { x.clone() };
        let (a, b, c, d) = (s(&self.alpha), s(&self.beta), s(&self.gamma), s(&self.delta));
        let lin = |p: &Rat, q: &Rat| UniPoly::linear(p.clone(), q.clone()).fmt_var("t");
        let wrap = |s: String| {
            if s.contains(' ') {
                format!("({s})")
            } else {
                s
            }
        };
        let num = lin(&a, &b);
        if c.is_zero() {
            if d.is_one() {
                return f.write_str(&num);
            }
            return write!(f, "{}/{}", wrap(num), format_rat(&d));
        }
        write!(f, "{}/{}", wrap(num), wrap(lin(&c, &d)))
    }
}

/// How a factor was confirmed.
#[derive(Clone, Debug, PartialEq)]
pub enum Certainty {
    /// Exact polynomial division left no remainder.
    Exact,
    /// Irrational coefficients; the scaled residual `|R(t, φ(t))|` stayed
    /// below this bound at every certification point.
    NumericallyCertified { residual: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct MoebiusLikeFactor {
    pub moebius: Moebius,
    pub bilinear: BiPoly,
    pub certainty: Certainty,
}

impl MoebiusLikeFactor {
    fn exact(m: Moebius) -> Self {
        Self {
            bilinear: m.to_bilinear(),
            moebius: m,
            certainty: Certainty::Exact,
        }
    }
}

const SAMPLE_POINTS: [i64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];
const MIN_SAMPLES: usize = 5;
const NUMERIC_ROOT_BITS: i64 = 300;
const NUMERIC_ROUND_BITS: u64 = 280;
const CERT_POINTS: usize = 50;

struct Sample {
    t: Rat,
    rational: Vec<Rat>,
    roots: Vec<Rat>,
}

/// All Möbius-like factors of `r`, sorted with exact factors first.
pub fn moebius_like_factors(r: &BiPoly) -> Result<Vec<MoebiusLikeFactor>> {
    if r.is_zero() {
        return Err(Error::DegenerateInput(
            "radius-condition polynomial vanishes identically (pipe surface)".into(),
        ));
    }
    let mut rem = r.primitive();
    let mut found: Vec<MoebiusLikeFactor> = Vec::new();

    for m in [
        Moebius::identity(),
        Moebius::negation(),
        Moebius::reciprocal(),
        Moebius::neg_reciprocal(),
    ] {
        let f = m.to_bilinear();
        let mut hit = false;
        while let Some(q) = rem.div_exact(&f) {
            rem = q;
            hit = true;
        }
        if hit {
            found.push(MoebiusLikeFactor::exact(m));
        }
    }

    if rem.deg_u() >= 1 && rem.deg_t() >= 1 {
        search_sampled(&mut rem, &mut found)?;
    }
    found.sort_by(|a, b| a.moebius.cmp(&b.moebius));
    Ok(found)
}

fn collect_samples(rem: &BiPoly) -> Result<Vec<Sample>> {
    let lc = rem.lc_u();
    let mut samples = Vec::new();
    let fine = pow2(-NUMERIC_ROOT_BITS);
    for &t in SAMPLE_POINTS.iter() {
        if samples.len() == MIN_SAMPLES + 1 {
            break;
        }
        let t = int(t);
        if lc.eval(&t).is_zero() {
            continue;
        }
        let p = rem.eval_t(&t);
        let isolated = real_roots(&p, &default_width())?;
        let mut rational = Vec::new();
        let mut roots = Vec::new();
        for mut iso in isolated {
            match iso.rational_value() {
                Some(v) => {
                    rational.push(v.clone());
                    roots.push(v);
                }
                None => roots.push(refined_mid(&iso, &fine)),
            }
        }
        samples.push(Sample { t, rational, roots });
    }
    Ok(samples)
}

fn refined_mid(iso: &IsolatedRoot, width: &Rat) -> Rat {
    iso.refined(width).midpoint()
}

/// Solves `u_k (γ t_k + δ) - (α t_k + β) = 0` for three correspondences.
fn fit(points: [(&Rat, &Rat); 3]) -> Option<[Rat; 4]> {
    let rows: Vec<Vec<Rat>> = points
        .iter()
        .map(|(t, u)| vec![-(*t).clone(), -Rat::one(), *u * *t, (*u).clone()])
        .collect();
    let ns = nullspace(&rows, 4);
    if ns.len() != 1 {
        return None;
    }
    let v = &ns[0];
    Some([v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()])
}

fn search_sampled(rem: &mut BiPoly, found: &mut Vec<MoebiusLikeFactor>) -> Result<()> {
    let samples = collect_samples(rem)?;
    if samples.len() < 4 {
        return Ok(());
    }
    let (s0, s1, s2) = (&samples[0], &samples[1], &samples[2]);
    let rest = &samples[3..];

    // Exact phase over rational correspondences.
    for u0 in &s0.rational {
        for u1 in &s1.rational {
            for u2 in &s2.rational {
                let Some(c) = fit([(&s0.t, u0), (&s1.t, u1), (&s2.t, u2)]) else {
                    continue;
                };
                let [a, b, g, d] = c;
                let Ok(m) = Moebius::new(a, b, g, d) else {
                    continue;
                };
                if found.iter().any(|f| f.moebius == m) {
                    continue;
                }
                let consistent = rest.iter().all(|s| match m.apply(&s.t) {
                    Ok(v) => rem.eval(&s.t, &v).is_zero(),
                    Err(_) => false,
                });
                if !consistent {
                    continue;
                }
                let f = m.to_bilinear();
                if bipoly_divides(&f, rem) {
                    while let Some(q) = rem.div_exact(&f) {
                        *rem = q;
                    }
                    found.push(MoebiusLikeFactor::exact(m));
                }
            }
        }
    }

    // Numeric phase: triples involving at least one irrational root.
    let any_irrational = samples[..3].iter().any(|s| s.roots.len() > s.rational.len());
    if !any_irrational || rem.deg_u() == 0 || rem.deg_t() == 0 {
        return Ok(());
    }
    let scaled = rem.scale(&rem.max_abs_coeff().recip());
    let match_tol = tenth_power(40);
    let dedup_tol = tenth_power(20);
    let cert_tol = tenth_power(30);
    let snap = pow2(-200);
    for u0 in &s0.roots {
        for u1 in &s1.roots {
            for u2 in &s2.roots {
                let all_rational = s0.rational.contains(u0)
                    && s1.rational.contains(u1)
                    && s2.rational.contains(u2);
                if all_rational {
                    continue;
                }
                let Some(mut c) = fit([(&s0.t, u0), (&s1.t, u1), (&s2.t, u2)]) else {
                    continue;
                };
                let big = c.iter().map(|x| x.abs()).max().unwrap();
                if big.is_zero() {
                    continue;
                }
                for x in c.iter_mut() {
                    *x /= &big;
                    if x.abs() < snap {
                        *x = Rat::zero();
                    }
                }
                let [a, b, g, d] = c;
                let Ok(m) = Moebius::new_numeric(a, b, g, d) else {
                    continue;
                };
                let rounded = [m.alpha(), m.beta(), m.gamma(), m.delta()]
                    .map(|x| round_to_bits(x, NUMERIC_ROUND_BITS));
                let [a, b, g, d] = rounded;
                let Ok(m) = Moebius::new_numeric(a, b, g, d) else {
                    continue;
                };
                if found
                    .iter()
                    .any(|f| f.moebius.projective_distance(&m) < dedup_tol)
                {
                    continue;
                }
                let consistent = rest.iter().all(|s| match m.apply(&s.t) {
                    Ok(v) => s.roots.iter().any(|u| (u - &v).abs() < match_tol),
                    Err(_) => false,
                });
                if !consistent {
                    continue;
                }
                if let Some(residual) = certify(&scaled, &m, &cert_tol) {
                    found.push(MoebiusLikeFactor {
                        bilinear: m.to_bilinear(),
                        moebius: m,
                        certainty: Certainty::NumericallyCertified { residual },
                    });
                }
            }
        }
    }
    Ok(())
}

/// Max of `|R(t, φ(t))|` over fresh points in `[-1, 1]`, computed exactly on
/// the rational approximation of `φ`; `None` when it exceeds `tol`.
fn certify(r: &BiPoly, m: &Moebius, tol: &Rat) -> Option<f64> {
    let mut worst = Rat::zero();
    let mut used = 0;
    let mut k = 0i64;
    while used < CERT_POINTS {
        // Points (2k+1)/51 - 1 + 1/1009, away from small rationals.
        let t = Rat::new((2 * k + 1).into(), 51.into()) - int(1) + Rat::new(1.into(), 1009.into());
        k += 1;
        if k > 200 {
            break;
        }
        let Ok(u) = m.apply(&t) else { continue };
        let v = r.eval(&t, &u).abs();
        if &v >= tol {
            return None;
        }
        if v > worst {
            worst = v;
        }
        used += 1;
    }
    (used == CERT_POINTS).then(|| to_f64(&worst).max(f64::MIN_POSITIVE))
}

/// Whether the graph of `m` lies in the zero set of `r`: exact division for
/// exact `m`, residual certification for numeric `m`.
pub fn vanishes_on(r: &BiPoly, m: &Moebius) -> bool {
    if r.is_zero() {
        return true;
    }
    if m.is_exact() {
        return bipoly_divides(&m.to_bilinear(), r);
    }
    let scaled = r.scale(&r.max_abs_coeff().recip());
    certify(&scaled, m, &tenth_power(30)).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::rat;

    fn bp(terms: &[((u32, u32), i64)]) -> BiPoly {
        BiPoly::from_terms(terms.iter().map(|&(k, c)| (k, int(c))))
    }

    #[test]
    fn apply_examples() {
        assert_eq!(Moebius::reciprocal().apply(&int(2)).unwrap(), rat(1, 2));
        assert_eq!(Moebius::negation().apply(&int(3)).unwrap(), int(-3));
        assert_eq!(Moebius::reflect_unit().apply(&rat(1, 4)).unwrap(), rat(3, 4));
        assert_eq!(Moebius::reciprocal().apply(&int(0)), Err(Error::PoleAtInput));
    }

    #[test]
    fn group_laws() {
        let n = Moebius::negation();
        assert!(n.compose(&n).is_identity());
        assert_eq!(Moebius::reciprocal().inverse(), Moebius::reciprocal());
        let r = Moebius::reflect_unit();
        assert!(r.compose(&r).is_identity());
        let m = Moebius::from_ints(2, 1, 3, 7).unwrap();
        assert!(m.compose(&m.inverse()).is_identity());
    }

    #[test]
    fn normalization_and_degeneracy() {
        let m = Moebius::from_ints(2, 4, 0, 6).unwrap();
        assert_eq!(m.coeffs(), [&int(1), &int(2), &int(0), &int(3)]);
        assert!(Moebius::from_ints(1, 2, 2, 4).is_err());
    }

    #[test]
    fn bilinear_forms() {
        assert_eq!(Moebius::identity().to_bilinear(), bp(&[((0, 1), 1), ((1, 0), -1)]));
        assert_eq!(Moebius::neg_reciprocal().to_bilinear(), bp(&[((1, 1), 1), ((0, 0), 1)]));
        let m = Moebius::from_ints(1, 1, 1, -1).unwrap();
        assert_eq!(
            m.to_bilinear(),
            bp(&[((1, 1), 1), ((0, 1), -1), ((1, 0), -1), ((0, 0), -1)])
        );
    }

    #[test]
    fn display() {
        assert_eq!(Moebius::identity().to_string(), "t");
        assert_eq!(Moebius::neg_reciprocal().to_string(), "-1/t");
        assert_eq!(Moebius::from_ints(1, 1, 1, -1).unwrap().to_string(), "(t + 1)/(t - 1)");
        assert_eq!(Moebius::reflect_unit().to_string(), "-t + 1");
    }

    #[test]
    fn finds_non_closed_form_factor() {
        // (u(t - 1) - (t + 1)) * (u^2 + t^2 + 1)
        let m = Moebius::from_ints(1, 1, 1, -1).unwrap();
        let g = bp(&[((0, 2), 1), ((2, 0), 1), ((0, 0), 1)]);
        let r = &m.to_bilinear() * &g;
        let fs = moebius_like_factors(&r).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].moebius, m);
        assert_eq!(fs[0].certainty, Certainty::Exact);
    }

    #[test]
    fn finds_irrational_factor_numerically() {
        // u - sqrt(2) t comes with its conjugate: u^2 - 2 t^2.
        let r = bp(&[((0, 2), 1), ((2, 0), -2)]);
        let fs = moebius_like_factors(&r).unwrap();
        assert_eq!(fs.len(), 2);
        for f in &fs {
            assert!(matches!(f.certainty, Certainty::NumericallyCertified { .. }));
            let slope = to_f64(f.moebius.alpha()) / to_f64(f.moebius.delta());
            assert!((slope.abs() - 2f64.sqrt()).abs() < 1e-14);
        }
    }

    #[test]
    fn zero_input_is_degenerate() {
        assert!(matches!(
            moebius_like_factors(&BiPoly::zero()),
            Err(Error::DegenerateInput(_))
        ));
    }
}
