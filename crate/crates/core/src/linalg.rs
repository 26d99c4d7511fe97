//! Small exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::ratpoly::{int, Rat};

pub type Vec3 = [Rat; 3];
pub type Mat3 = [[Rat; 3]; 3];

pub fn vec3(x: i64, y: i64, z: i64) -> Vec3 {
    [int(x), int(y), int(z)]
}

pub fn zero3() -> Vec3 {
    [Rat::zero(), Rat::zero(), Rat::zero()]
}

pub fn add(a: &Vec3, b: &Vec3) -> Vec3 {
    [&a[0] + &b[0], &a[1] + &b[1], &a[2] + &b[2]]
}

pub fn sub(a: &Vec3, b: &Vec3) -> Vec3 {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

pub fn scale(a: &Vec3, s: &Rat) -> Vec3 {
    [&a[0] * s, &a[1] * s, &a[2] * s]
}

pub fn neg(a: &Vec3) -> Vec3 {
    [-&a[0], -&a[1], -&a[2]]
}

pub fn dot(a: &Vec3, b: &Vec3) -> Rat {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

pub fn norm_sq(a: &Vec3) -> Rat {
    dot(a, a)
}

pub fn is_zero(a: &Vec3) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn identity() -> Mat3 {
    let mut m = zero_mat();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rat::one();
    }
    m
}

pub fn zero_mat() -> Mat3 {
    [zero3(), zero3(), zero3()]
}

pub fn diag(a: i64, b: i64, c: i64) -> Mat3 {
    let mut m = zero_mat();
    m[0][0] = int(a);
    m[1][1] = int(b);
    m[2][2] = int(c);
    m
}

pub fn mat_from_ints(r: [[i64; 3]; 3]) -> Mat3 {
    r.map(|row| row.map(int))
}

pub fn mat_vec(m: &Mat3, v: &Vec3) -> Vec3 {
    [dot(&m[0], v), dot(&m[1], v), dot(&m[2], v)]
}

pub fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = zero_mat();
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j] + &a[i][2] * &b[2][j];
        }
    }
    out
}

pub fn transpose(a: &Mat3) -> Mat3 {
    let mut out = zero_mat();
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[j][i].clone();
        }
    }
    out
}

pub fn det(a: &Mat3) -> Rat {
    dot(&a[0], &cross(&a[1], &a[2]))
}

/// Matrix with the given vectors as columns.
pub fn from_columns(c0: &Vec3, c1: &Vec3, c2: &Vec3) -> Mat3 {
    transpose(&[c0.clone(), c1.clone(), c2.clone()])
}

pub fn inverse(a: &Mat3) -> Option<Mat3> {
    let d = det(a);
    if d.is_zero() {
        return None;
    }
    // Rows of the inverse transpose are the cross products of the columns.
    let cols = transpose(a);
    let adj_t = [
        cross(&cols[1], &cols[2]),
        cross(&cols[2], &cols[0]),
        cross(&cols[0], &cols[1]),
    ];
    let inv_d = d.recip();
    Some(adj_t.map(|row| scale(&row, &inv_d)))
}

/// Largest absolute entry of `A Aᵀ - I`.
pub fn orthogonality_defect(a: &Mat3) -> Rat {
    let p = mat_mul(a, &transpose(a));
    let mut worst = Rat::zero();
    for (i, row) in p.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let d = if i == j { v - Rat::one() } else { v.clone() };
            let d = if d < Rat::zero() { -d } else { d };
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

pub fn is_orthogonal(a: &Mat3) -> bool {
    orthogonality_defect(a).is_zero()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Rat>]) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let (pivot_row, row) = if i < r {
                    let (a, b) = m.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = m.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (x, y) in row.iter_mut().zip(pivot_row.iter()) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right nullspace of `m` (rows × cols).
pub fn nullspace(m: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); cols];
            v[f] = Rat::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            v
        })
        .collect()
}

/// Solves `A x = b` for square or overdetermined consistent systems.
pub fn solve(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let cols = a.first()?.len();
    let mut aug: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) || pivots.len() < cols {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][cols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::rat;

    #[test]
    fn inverse_and_det() {
        let a = mat_from_ints([[2, 1, 0], [0, 1, 3], [1, 0, 1]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity());
        assert_eq!(det(&a), int(5));
        assert!(inverse(&mat_from_ints([[1, 2, 3], [2, 4, 6], [0, 0, 1]])).is_none());
    }

    #[test]
    fn nullspace_of_rank_two() {
        let m = vec![vec![int(1), int(2), int(3)], vec![int(0), int(1), int(1)]];
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        for row in &m {
            let s: Rat = row.iter().zip(v).map(|(a, b)| a * b).sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn solve_square() {
        let a = vec![vec![int(1), int(1)], vec![int(1), int(-1)]];
        assert_eq!(solve(&a, &[int(3), int(1)]), Some(vec![int(2), int(1)]));
        let s = vec![vec![int(1), int(1)], vec![int(2), int(2)]];
        assert_eq!(solve(&s, &[int(1), rat(1, 2)]), None);
    }

    #[test]
    fn orthogonality() {
        let q = [
            [rat(3, 5), rat(-4, 5), int(0)],
            [rat(4, 5), rat(3, 5), int(0)],
            [int(0), int(0), int(1)],
        ];
        assert!(is_orthogonal(&q));
        assert!(!is_orthogonal(&diag(1, 2, 1)));
    }
}
