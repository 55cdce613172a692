//! Vectors of scalars and small dense linear algebra over [`Scalar`].

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::scalar::Scalar;

/// Coordinates of a point or direction, in whatever basis the caller fixes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Vector(pub Vec<Scalar>);

impl Vector {
    pub fn zeros(dim: usize) -> Self {
        Vector(vec![Scalar::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = Scalar::one();
        v
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Vector(xs.iter().map(|&x| Scalar::from_int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Scalar> {
        self.0.iter()
    }

    pub fn scale(&self, k: &Scalar) -> Vector {
        Vector(self.0.iter().map(|x| x * k).collect())
    }

    /// Coordinate-wise dot product, ignoring any bilinear form.
    pub fn dot(&self, other: &Vector) -> Scalar {
        self.0.iter().zip(&other.0).map(|(x, y)| x * y).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn is_exact(&self) -> bool {
        self.0.iter().all(Scalar::is_exact)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(Scalar::to_f64).collect()
    }

    pub fn to_float(&self) -> Vector {
        Vector(self.0.iter().map(Scalar::to_float).collect())
    }

    /// `Σ coeffs[i]·vectors[i]`; `dim` is used when the list is empty.
    pub fn combination(coeffs: &[Scalar], vectors: &[Vector], dim: usize) -> Vector {
        let mut out = Vector::zeros(dim);
        for (c, v) in coeffs.iter().zip(vectors) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.0.iter_mut().zip(&v.0) {
                *o = &*o + &(c * x);
            }
        }
        out
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(Scalar::to_string).collect()
    }
}

impl Index<usize> for Vector {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        Vector(self.0.iter().zip(&rhs.0).map(|(x, y)| x + y).collect())
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        Vector(self.0.iter().zip(&rhs.0).map(|(x, y)| x - y).collect())
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector(self.0.iter().map(|x| -x).collect())
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Vector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

pub type Matrix = Vec<Vec<Scalar>>;

fn pick_pivot(m: &Matrix, col: usize, from: usize) -> Option<usize> {
    let candidates = (from..m.len()).filter(|&r| !m[r][col].is_zero());
    if m.iter().all(|row| row.iter().all(Scalar::is_exact)) {
        candidates.into_iter().next()
    } else {
        candidates.max_by(|&a, &b| m[a][col].abs().to_f64().total_cmp(&m[b][col].abs().to_f64()))
    }
}

/// Reduces `m` in place to row echelon form and returns the pivot columns.
fn echelon(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = pick_pivot(m, c, r) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inverse().expect("nonzero pivot");
        for j in c..cols {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] = &m[i][j] - &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of a list of row vectors.
pub fn rank(rows: &[Vector]) -> usize {
    let mut m: Matrix = rows.iter().map(|v| v.0.clone()).collect();
    echelon(&mut m).len()
}

/// Solves the square system `a·x = b`; `None` when `a` is singular.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    let n = a.len();
    debug_assert!(a.iter().all(|row| row.len() == n) && b.len() == n);
    let mut m: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut row = row.clone();
            row.push(rhs.clone());
            row
        })
        .collect();
    let pivots = echelon(&mut m);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
        return None;
    }
    Some(m.into_iter().map(|mut row| row.pop().expect("augmented column")).collect())
}

/// Inverse of a square matrix.
pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let mut m: Matrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut row = row.clone();
            row.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            row
        })
        .collect();
    let pivots = echelon(&mut m);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Determinant by fraction-free cofactor-free elimination.
pub fn determinant(a: &Matrix) -> Scalar {
    let n = a.len();
    let mut m = a.clone();
    let mut det = Scalar::one();
    for c in 0..n {
        let Some(p) = pick_pivot(&m, c, c) else {
            return Scalar::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det = &det * &m[c][c];
        let inv = m[c][c].inverse().expect("nonzero pivot");
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..n {
                let t = &f * &m[c][j];
                m[i][j] = &m[i][j] - &t;
            }
        }
    }
    det
}

/// Symmetric positive definiteness via leading principal minors.
pub fn is_positive_definite(a: &Matrix) -> bool {
    let n = a.len();
    let symmetric = (0..n).all(|i| (0..n).all(|j| a[i][j] == a[j][i]));
    symmetric
        && (1..=n).all(|k| {
            let minor: Matrix = a[..k].iter().map(|row| row[..k].to_vec()).collect();
            determinant(&minor).is_positive()
        })
}
