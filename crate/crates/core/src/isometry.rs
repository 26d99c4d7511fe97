//! Affine isometries `x -> Q x + b` of 3-space.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{
    self, add, det, identity, is_zero, mat_mul, mat_vec, neg, orthogonality_defect, scale, sub,
    transpose, zero3, Mat3, Vec3,
};
use crate::ratpoly::{format_rat, rat, tenth_power, to_f64, Rat};

/// Orthogonal `Q` plus translation `b`.
///
/// With `exact == false` the entries are rational approximations and `Q Qᵀ`
/// deviates from the identity by less than `10^-30` entrywise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Isometry {
    q: Mat3,
    b: Vec3,
    det_sign: i8,
    exact: bool,
}

/// Tolerance for numeric orthogonality.
pub fn numeric_tolerance() -> Rat {
    tenth_power(30)
}

impl Isometry {
    /// Exact isometry; `Q` must be orthogonal.
    pub fn new(q: Mat3, b: Vec3) -> Result<Self> {
        if !linalg::is_orthogonal(&q) {
            return Err(Error::DegenerateInput("matrix is not orthogonal".into()));
        }
        let det_sign = if det(&q).is_positive() { 1 } else { -1 };
        Ok(Self {
            q,
            b,
            det_sign,
            exact: true,
        })
    }

    /// Isometry with approximate entries.
    pub fn new_numeric(q: Mat3, b: Vec3) -> Result<Self> {
        if orthogonality_defect(&q) >= numeric_tolerance() {
            return Err(Error::DegenerateInput(
                "matrix is not orthogonal within 1e-30".into(),
            ));
        }
        let det_sign = if det(&q).is_positive() { 1 } else { -1 };
        Ok(Self {
            q,
            b,
            det_sign,
            exact: false,
        })
    }

    pub fn identity() -> Self {
        Self::linear(identity()).unwrap()
    }

    pub fn linear(q: Mat3) -> Result<Self> {
        Self::new(q, zero3())
    }

    pub fn translation(b: Vec3) -> Self {
        Self::new(identity(), b).unwrap()
    }

    pub fn q(&self) -> &Mat3 {
        &self.q
    }

    pub fn b(&self) -> &Vec3 {
        &self.b
    }

    pub fn det_sign(&self) -> i8 {
        self.det_sign
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn is_identity(&self) -> bool {
        self.q == identity() && is_zero(&self.b)
    }

    pub fn apply(&self, x: &Vec3) -> Vec3 {
        add(&mat_vec(&self.q, x), &self.b)
    }

    /// Linear part only, for direction vectors.
    pub fn apply_linear(&self, v: &Vec3) -> Vec3 {
        mat_vec(&self.q, v)
    }

    pub fn apply_f64(&self, x: [f64; 3]) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (i, o) in out.iter_mut().enumerate() {
            *o = to_f64(&self.b[i])
                + (0..3).map(|j| to_f64(&self.q[i][j]) * x[j]).sum::<f64>();
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        Isometry {
            q: mat_mul(&self.q, &other.q),
            b: add(&mat_vec(&self.q, &other.b), &self.b),
            det_sign: self.det_sign * other.det_sign,
            exact: self.exact && other.exact,
        }
    }

    pub fn inverse(&self) -> Isometry {
        let qt = transpose(&self.q);
        let b = neg(&mat_vec(&qt, &self.b));
        Isometry {
            q: qt,
            b,
            det_sign: self.det_sign,
            exact: self.exact,
        }
    }

    /// `g ∘ self ∘ g⁻¹`.
    pub fn conjugate_by(&self, g: &Isometry) -> Isometry {
        g.compose(self).compose(&g.inverse())
    }

    /// Smallest `k <= max` with `self^k = id` (exact isometries only).
    pub fn order(&self, max: usize) -> Option<usize> {
        let mut p = self.clone();
        for k in 1..=max {
            if p.is_identity() {
                return Some(k);
            }
            p = p.compose(self);
        }
        None
    }

    /// Entrywise distance to another isometry.
    pub fn distance(&self, other: &Isometry) -> Rat {
        let mut worst = Rat::zero();
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((&self.q[i][j] - &other.q[i][j]).abs());
            }
            worst = worst.max((&self.b[i] - &other.b[i]).abs());
        }
        worst
    }

    /// Short geometric description: identity, reflection, half-turn, ...
    pub fn describe(&self) -> String {
        if !self.exact {
            return format!("numeric isometry with det {}", self.det_sign);
        }
        let tr = &self.q[0][0] + &self.q[1][1] + &self.q[2][2];
        let id = identity();
        let b_is_zero = is_zero(&self.b);
        if self.q == id {
            return if b_is_zero {
                "identity".into()
            } else {
                format!("translation by {}", fmt_vec(&self.b))
            };
        }
        if self.det_sign > 0 {
            // Rotation axis spans the kernel of Q - I.
            let axis = kernel_vector(&sub_mat(&self.q, &id));
            if tr == rat(-1, 1) {
                let p = scale(&self.b, &rat(1, 2));
                let screw = !linalg::dot(&self.b, &axis).is_zero();
                return format!(
                    "{} about the axis through {} with direction {}",
                    if screw { "screw half-turn" } else { "half-turn" },
                    fmt_vec(&p),
                    fmt_vec(&axis)
                );
            }
            let cos = (&tr - Rat::one()) / rat(2, 1);
            return format!(
                "rotation with cos(angle) = {} about direction {}",
                format_rat(&cos),
                fmt_vec(&axis)
            );
        }
        if self.q == linalg::diag(-1, -1, -1) {
            let p = scale(&self.b, &rat(1, 2));
            return format!("point reflection through {}", fmt_vec(&p));
        }
        if tr == Rat::one() {
            // Mirror normal spans the kernel of Q + I.
            let n = kernel_vector(&add_mat(&self.q, &id));
            let fixed = mat_vec(&self.q, &self.b) == neg(&self.b);
            let offset = linalg::dot(&n, &self.b) / rat(2, 1);
            return format!(
                "{} in the plane {}",
                if fixed { "reflection" } else { "glide reflection" },
                fmt_plane(&n, &offset)
            );
        }
        let axis = kernel_vector(&add_mat(&self.q, &id));
        format!("rotoreflection about direction {}", fmt_vec(&axis))
    }
}

impl fmt::Display for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .q
            .iter()
            .map(|r| {
                format!(
                    "[{}]",
                    r.iter().map(format_rat).collect::<Vec<_>>().join(", ")
                )
            })
            .collect();
        write!(f, "Q = [{}], b = {}", rows.join(", "), fmt_vec(&self.b))
    }
}

fn sub_mat(a: &Mat3, b: &Mat3) -> Mat3 {
    [sub(&a[0], &b[0]), sub(&a[1], &b[1]), sub(&a[2], &b[2])]
}

fn add_mat(a: &Mat3, b: &Mat3) -> Mat3 {
    [add(&a[0], &b[0]), add(&a[1], &b[1]), add(&a[2], &b[2])]
}

/// A nonzero kernel vector scaled to integer-friendly form, or zero.
fn kernel_vector(m: &Mat3) -> Vec3 {
    let rows: Vec<Vec<Rat>> = m.iter().map(|r| r.to_vec()).collect();
    let ns = linalg::nullspace(&rows, 3);
    match ns.first() {
        Some(v) => primitive_direction(&[v[0].clone(), v[1].clone(), v[2].clone()]),
        None => zero3(),
    }
}

/// Scales a direction so its first nonzero entry is positive and entries
/// are coprime integers where possible.
pub fn primitive_direction(v: &Vec3) -> Vec3 {
    use num_integer::Integer;
    let mut l = num_bigint::BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let ints: Vec<num_bigint::BigInt> = v
        .iter()
        .map(|x| (x * Rat::from_integer(l.clone())).to_integer())
        .collect();
    let mut g = num_bigint::BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return zero3();
    }
    let first_neg = ints.iter().find(|x| !x.is_zero()).unwrap().is_negative();
    if first_neg {
        g = -g;
    }
    let out: Vec<Rat> = ints.iter().map(|x| Rat::new(x.clone(), g.clone())).collect();
    [out[0].clone(), out[1].clone(), out[2].clone()]
}

pub fn fmt_vec(v: &Vec3) -> String {
    format!(
        "({}, {}, {})",
        format_rat(&v[0]),
        format_rat(&v[1]),
        format_rat(&v[2])
    )
}

/// `n·x = offset` written as e.g. `x + z = 0`.
pub fn fmt_plane(n: &Vec3, offset: &Rat) -> String {
    let mut s = String::new();
    for (c, var) in n.iter().zip(["x", "y", "z"]) {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() {
            s.push_str(&format_rat(&mag));
        }
        s.push_str(var);
    }
    format!("{s} = {}", format_rat(offset))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{diag, mat_from_ints, vec3};

    #[test]
    fn group_operations() {
        let f = Isometry::new(diag(-1, 1, -1), vec3(1, 2, 3)).unwrap();
        assert!(f.compose(&f.inverse()).is_identity());
        assert_eq!(f.inverse().compose(&f), Isometry::identity());
        assert_eq!(Isometry::linear(diag(-1, 1, -1)).unwrap().order(8), Some(2));
        let r4 = Isometry::linear(mat_from_ints([[0, -1, 0], [1, 0, 0], [0, 0, 1]])).unwrap();
        assert_eq!(r4.order(8), Some(4));
    }

    #[test]
    fn rejects_non_orthogonal() {
        assert!(Isometry::linear(diag(2, 1, 1)).is_err());
    }

    #[test]
    fn descriptions() {
        let half = Isometry::linear(diag(-1, 1, -1)).unwrap();
        assert_eq!(
            half.describe(),
            "half-turn about the axis through (0, 0, 0) with direction (0, 1, 0)"
        );
        let refl = Isometry::linear(mat_from_ints([[0, 0, -1], [0, 1, 0], [-1, 0, 0]])).unwrap();
        assert_eq!(refl.describe(), "reflection in the plane x + z = 0");
        assert_eq!(Isometry::identity().describe(), "identity");
        let pr = Isometry::linear(diag(-1, -1, -1)).unwrap();
        assert!(pr.describe().starts_with("point reflection"));
    }
}
