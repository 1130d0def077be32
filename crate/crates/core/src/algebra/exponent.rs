use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

/// An element of the dual lattice `L*`, i.e. the exponent of a Laurent monomial.
///
/// Ordering is lexicographic on the coordinate tuple, which is the canonical term order
/// used for rendering and hashing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ExponentVector(Vec<i64>);

impl ExponentVector {
    pub fn new(coords: Vec<i64>) -> Self {
        ExponentVector(coords)
    }

    pub fn zero(rank: usize) -> Self {
        ExponentVector(vec![0; rank])
    }

    /// The `i`-th dual basis vector `f_{i+1}`.
    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        ExponentVector(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, k: i64) -> Self {
        ExponentVector(self.0.iter().map(|c| c * k).collect())
    }

    /// Returns the representative of `±self` whose first nonzero coordinate is
    /// positive, and whether a sign flip was needed.
    pub fn sign_normalized(&self) -> (Self, bool) {
        match self.0.iter().find(|&&c| c != 0) {
            Some(&c) if c < 0 => (-self, true),
            _ => (self.clone(), false),
        }
    }
}

impl From<Vec<i64>> for ExponentVector {
    fn from(v: Vec<i64>) -> Self {
        ExponentVector(v)
    }
}

impl<const N: usize> From<[i64; N]> for ExponentVector {
    fn from(v: [i64; N]) -> Self {
        ExponentVector(v.to_vec())
    }
}

impl Add for &ExponentVector {
    type Output = ExponentVector;
    fn add(self, rhs: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.rank(), rhs.rank());
        ExponentVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &ExponentVector {
    type Output = ExponentVector;
    fn sub(self, rhs: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.rank(), rhs.rank());
        ExponentVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &ExponentVector {
    type Output = ExponentVector;
    fn neg(self) -> ExponentVector {
        ExponentVector(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
