use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: Vec<Vec<i64>>,
    cols: usize,
}

impl IntMatrix {
    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix { rows, cols }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows: vec![vec![0; cols]; rows], cols }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = 1;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.rows[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.rows[i]
    }

    pub fn as_rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        self.rows.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows(), "dimension mismatch");
        let mut out = Self::zeros(self.rows(), other.cols);
        for i in 0..self.rows() {
            for j in 0..other.cols {
                out.rows[i][j] = (0..self.cols).map(|k| self.rows[i][k] * other.rows[k][j]).sum();
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = Self::zeros(self.cols, self.rows());
        for i in 0..self.rows() {
            for j in 0..self.cols {
                out.rows[j][i] = self.rows[i][j];
            }
        }
        out
    }

    pub fn neg(&self) -> IntMatrix {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> IntMatrix {
        IntMatrix {
            rows: self.rows.iter().map(|r| r.iter().map(|x| x * k).collect()).collect(),
            cols: self.cols,
        }
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows()).all(|i| (0..self.cols).all(|j| self.rows[i][j] == -self.rows[j][i]))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> i64 {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows();
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<BigInt>> =
            self.rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let mut sign = 1i64;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        let d = &a[n - 1][n - 1] * sign;
        d.to_i64().expect("determinant overflows i64")
    }

    /// Integer inverse, if the matrix is invertible over the integers (det = ±1).
    pub fn inverse(&self) -> Option<IntMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows();
        let mut a: Vec<Vec<BigRational>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row: Vec<BigRational> =
                    r.iter().map(|&x| BigRational::from_integer(x.into())).collect();
                row.extend((0..n).map(|j| {
                    if i == j { BigRational::one() } else { BigRational::zero() }
                }));
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&i| !a[i][col].is_zero())?;
            a.swap(col, pivot);
            let p = a[col][col].clone();
            for v in a[col].iter_mut() {
                *v /= &p;
            }
            for i in 0..n {
                if i != col && !a[i][col].is_zero() {
                    let f = a[i][col].clone();
                    for j in 0..2 * n {
                        let t = &a[col][j] * &f;
                        a[i][j] -= t;
                    }
                }
            }
        }
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = &a[i][n + j];
                if !v.is_integer() {
                    return None;
                }
                out.rows[i][j] = v.to_integer().to_i64()?;
            }
        }
        Some(out)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in r.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants() {
        assert_eq!(IntMatrix::identity(3).det(), 1);
        assert_eq!(IntMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]).det(), -1);
        assert_eq!(IntMatrix::from_rows(vec![vec![2, 3], vec![4, 6]]).det(), 0);
        let m = IntMatrix::from_rows(vec![vec![2, -1, 0], vec![1, 3, 2], vec![0, 5, -4]]);
        assert_eq!(m.det(), 2 * (-12 - 10) + (-4));
    }

    #[test]
    fn unimodular_inverse() {
        let m = IntMatrix::from_rows(vec![vec![2, 1], vec![3, 2]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), IntMatrix::identity(2));
        assert!(IntMatrix::from_rows(vec![vec![2, 0], vec![0, 1]]).inverse().is_none());
    }
}
