use std::fmt;

use super::MutationError;
use crate::lattice::{IntMatrix, LatticeVector, SkewForm};

/// Skew-symmetric exchange matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BMatrix(IntMatrix);

/// `b_ij = ω(v_i, v_j)` for an ordered list of vectors.
pub fn b_matrix(vectors: &[LatticeVector], form: &SkewForm) -> BMatrix {
    let n = vectors.len();
    let mut m = IntMatrix::zeros(n, n);
    for (i, vi) in vectors.iter().enumerate() {
        for (j, vj) in vectors.iter().enumerate() {
            m.set(i, j, form.eval(vi, vj));
        }
    }
    BMatrix(m)
}

impl BMatrix {
    pub fn from_matrix(m: IntMatrix) -> Result<Self, MutationError> {
        if !m.is_skew_symmetric() {
            return Err(MutationError::NotSkewSymmetric);
        }
        Ok(BMatrix(m))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.rows()
    }

    /// Matrix mutation at index `k` (0-based):
    /// `b'_ij = -b_ij` if `k ∈ {i, j}`, else `b_ij + (|b_ik| b_kj + b_ik |b_kj|) / 2`.
    pub fn mutate(&self, k: usize) -> Result<BMatrix, MutationError> {
        let n = self.size();
        if k >= n {
            return Err(MutationError::IndexOutOfRange { index: k, len: n });
        }
        let b = &self.0;
        let mut out = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = if i == k || j == k {
                    -b.get(i, j)
                } else {
                    let (bik, bkj) = (b.get(i, k), b.get(k, j));
                    b.get(i, j) + (bik.abs() * bkj + bik * bkj.abs()) / 2
                };
                out.set(i, j, v);
            }
        }
        Ok(BMatrix(out))
    }
}

impl fmt::Display for BMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
