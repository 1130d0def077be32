//! Lattice vectors, skew forms, piecewise-linear mutations and basis changes.

mod matrix;

pub use matrix::IntMatrix;

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::ExponentVector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("vector {0} is not primitive")]
    NotPrimitive(String),
    #[error("form matrix is not skew-symmetric")]
    NotSkewSymmetric,
    #[error("basis pair has determinant {0}, expected 1")]
    DeterminantNotOne(i64),
    #[error("map does not pull the target form back to the source form")]
    IncompatibleForms,
    #[error("operation needs rank 2, got {0}")]
    NotRankTwo(usize),
}

/// An element of the lattice `L`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LatticeVector(Vec<i64>);

impl LatticeVector {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticeVector(coords)
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVector(vec![0; rank])
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        LatticeVector(v)
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
        LatticeVector(self.0.iter().map(|c| c * k).collect())
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    /// `self + k·other`.
    pub fn add_scaled(&self, other: &LatticeVector, k: i64) -> Self {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + k * b).collect())
    }

    /// Nonnegative gcd of the coordinates.
    pub fn content(&self) -> i64 {
        self.0.iter().fold(0i64, |acc, c| acc.gcd(c))
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(v: Vec<i64>) -> Self {
        LatticeVector(v)
    }
}

impl<const N: usize> From<[i64; N]> for LatticeVector {
    fn from(v: [i64; N]) -> Self {
        LatticeVector(v.to_vec())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", ExponentVector::new(self.0.clone()))
    }
}

/// Canonical pairing `L* × L → Z`.
pub fn pair(m: &ExponentVector, v: &LatticeVector) -> Result<i64, LatticeError> {
    if m.rank() != v.rank() {
        return Err(LatticeError::RankMismatch { left: m.rank(), right: v.rank() });
    }
    Ok(m.coords().iter().zip(v.coords()).map(|(a, b)| a * b).sum())
}

/// An integral skew-symmetric bilinear form, stored by its Gram matrix
/// `matrix[i][j] = ω(e_i, e_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SkewForm {
    matrix: IntMatrix,
}

impl SkewForm {
    pub fn new(matrix: IntMatrix) -> Result<Self, LatticeError> {
        if !matrix.is_skew_symmetric() {
            return Err(LatticeError::NotSkewSymmetric);
        }
        Ok(SkewForm { matrix })
    }

    /// The rank-two form with `ω(e1, e2) = k`.
    pub fn rank2(k: i64) -> Self {
        SkewForm { matrix: IntMatrix::from_rows(vec![vec![0, k], vec![-k, 0]]) }
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// `ω(e1, e2)` for a rank-two form.
    pub fn k(&self) -> Option<i64> {
        (self.rank() == 2).then(|| self.matrix.get(0, 1))
    }

    pub fn is_degenerate(&self) -> bool {
        self.matrix.det() == 0
    }

    pub fn scaled(&self, a: i64) -> Self {
        SkewForm { matrix: self.matrix.scale(a) }
    }

    pub fn negated(&self) -> Self {
        self.scaled(-1)
    }

    /// `ω(u, v)`. Panics on rank mismatch.
    pub fn eval(&self, u: &LatticeVector, v: &LatticeVector) -> i64 {
        assert!(u.rank() == self.rank() && v.rank() == self.rank(), "rank mismatch");
        let mv = self.matrix.mul_vec(v.coords());
        u.coords().iter().zip(&mv).map(|(a, b)| a * b).sum()
    }

    /// `i_ω(u)`: the linear form `v ↦ ω(u, v)` as an element of `L*`.
    pub fn i_omega(&self, u: &LatticeVector) -> ExponentVector {
        ExponentVector::new(self.matrix.transpose().mul_vec(u.coords()))
    }
}

/// Symplectic reflection `v ↦ v + ω(u, v) u`.
pub fn reflect(form: &SkewForm, u: &LatticeVector, v: &LatticeVector) -> LatticeVector {
    v.add_scaled(u, form.eval(u, v))
}

/// Piecewise-linear mutation `v ↦ v + max(0, ω(u, v)) u`.
pub fn pl_mutate(form: &SkewForm, u: &LatticeVector, v: &LatticeVector) -> LatticeVector {
    v.add_scaled(u, form.eval(u, v).max(0))
}

/// Inverse of [`pl_mutate`]: `v ↦ v − max(0, ω(u, v)) u`.
pub fn pl_mutate_inv(form: &SkewForm, u: &LatticeVector, v: &LatticeVector) -> LatticeVector {
    v.add_scaled(u, -form.eval(u, v).max(0))
}

/// Nonzero with coprime coordinates.
pub fn is_primitive(v: &LatticeVector) -> bool {
    v.content() == 1
}

/// A unimodular matrix `M` with `M a = e1`, for primitive `a`.
///
/// Standard basis vectors get the permutation swapping them with `e1`; otherwise the
/// matrix is built by successive extended-gcd row operations that fold coordinate `i`
/// into coordinate `0`.
pub fn complete_to_basis(a: &[i64]) -> Result<IntMatrix, LatticeError> {
    let r = a.len();
    let content = a.iter().fold(0i64, |acc, c| acc.gcd(c));
    if content != 1 {
        return Err(LatticeError::NotPrimitive(ExponentVector::new(a.to_vec()).to_string()));
    }
    if let Some(j) = standard_index(a) {
        let mut m = IntMatrix::identity(r);
        if j != 0 {
            m.set(0, 0, 0);
            m.set(j, j, 0);
            m.set(0, j, 1);
            m.set(j, 0, 1);
        }
        return Ok(m);
    }
    let mut m = IntMatrix::identity(r);
    let mut cur = a.to_vec();
    for i in 1..r {
        if cur[i] == 0 {
            continue;
        }
        let eg = cur[0].extended_gcd(&cur[i]);
        let (mut g, mut s, mut t) = (eg.gcd, eg.x, eg.y);
        if g < 0 {
            g = -g;
            s = -s;
            t = -t;
        }
        let (p, q) = (cur[i] / g, cur[0] / g);
        // rows (0, i) ← [[s, t], [-p, q]] · rows (0, i); determinant s q + t p = 1
        for col in 0..r {
            let (x, y) = (m.get(0, col), m.get(i, col));
            m.set(0, col, s * x + t * y);
            m.set(i, col, -p * x + q * y);
        }
        cur[0] = g;
        cur[i] = 0;
    }
    if cur[0] == -1 {
        for col in 0..r {
            m.set(0, col, -m.get(0, col));
        }
    }
    Ok(m)
}

fn standard_index(a: &[i64]) -> Option<usize> {
    let mut nonzero = a.iter().enumerate().filter(|(_, &c)| c != 0);
    match (nonzero.next(), nonzero.next()) {
        (Some((j, &1)), None) => Some(j),
        _ => None,
    }
}

/// A form-compatible linear map `f: (L, ω) → (L', ω')`, i.e. `ω(v1, v2) = ω'(f v1, f v2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeMap {
    matrix: IntMatrix,
    source: SkewForm,
    target: SkewForm,
}

impl LatticeMap {
    /// `matrix` has one column per source basis vector.
    pub fn new(matrix: IntMatrix, source: SkewForm, target: SkewForm) -> Result<Self, LatticeError> {
        if matrix.cols() != source.rank() {
            return Err(LatticeError::RankMismatch { left: matrix.cols(), right: source.rank() });
        }
        if matrix.rows() != target.rank() {
            return Err(LatticeError::RankMismatch { left: matrix.rows(), right: target.rank() });
        }
        // f^T Ω' f must equal Ω
        let pulled = matrix.transpose().mul(target.matrix()).mul(&matrix);
        if &pulled != source.matrix() {
            return Err(LatticeError::IncompatibleForms);
        }
        Ok(LatticeMap { matrix, source, target })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn source(&self) -> &SkewForm {
        &self.source
    }

    pub fn target(&self) -> &SkewForm {
        &self.target
    }

    pub fn push_forward(&self, v: &LatticeVector) -> Result<LatticeVector, LatticeError> {
        if v.rank() != self.matrix.cols() {
            return Err(LatticeError::RankMismatch { left: v.rank(), right: self.matrix.cols() });
        }
        Ok(LatticeVector::new(self.matrix.mul_vec(v.coords())))
    }

    /// The adjoint `f*: L'* → L*` acting on exponent vectors (the transposed matrix).
    pub fn dual_matrix(&self) -> IntMatrix {
        self.matrix.transpose()
    }
}

/// Change of basis sending a determinant-one pair `v1 = (a, b)`, `v2 = (c, d)` to the
/// standard basis of a new rank-two lattice with `ω'(e1', e2') = ω(v1, v2)`.
///
/// Returns the map `m` (with `m(e1) = d e1' − b e2'`, `m(e2) = −c e1' + a e2'`) and the
/// dual matrix, under which `z1 = x1^d x2^{-c}` and `z2 = x1^{-b} x2^a`.
pub fn sl2_change_of_basis(
    form: &SkewForm,
    v1: &LatticeVector,
    v2: &LatticeVector,
) -> Result<(LatticeMap, IntMatrix), LatticeError> {
    if form.rank() != 2 {
        return Err(LatticeError::NotRankTwo(form.rank()));
    }
    if v1.rank() != 2 || v2.rank() != 2 {
        return Err(LatticeError::RankMismatch { left: 2, right: v1.rank().max(v2.rank()) });
    }
    let (a, b) = (v1.coords()[0], v1.coords()[1]);
    let (c, d) = (v2.coords()[0], v2.coords()[1]);
    let det = a * d - b * c;
    if det != 1 {
        return Err(LatticeError::DeterminantNotOne(det));
    }
    let matrix = IntMatrix::from_rows(vec![vec![d, -c], vec![-b, a]]);
    let target = SkewForm::rank2(form.eval(v1, v2));
    let map = LatticeMap::new(matrix, form.clone(), target)?;
    let dual = map.dual_matrix();
    Ok((map, dual))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(a: i64, b: i64) -> LatticeVector {
        LatticeVector::from([a, b])
    }

    #[test]
    fn pairing() {
        assert_eq!(pair(&[1, 0].into(), &v(1, 0)).unwrap(), 1);
        assert_eq!(pair(&[1, 0].into(), &v(0, 1)).unwrap(), 0);
        assert_eq!(pair(&[2, -3].into(), &v(1, 1)).unwrap(), -1);
        assert!(pair(&[1, 0, 0].into(), &v(1, 1)).is_err());
    }

    #[test]
    fn i_omega_rank_two_closed_form() {
        assert_eq!(SkewForm::rank2(1).i_omega(&v(0, 1)), ExponentVector::from([-1, 0]));
        assert_eq!(SkewForm::rank2(1).i_omega(&v(0, 0)), ExponentVector::from([0, 0]));
        assert_eq!(SkewForm::rank2(2).i_omega(&v(1, 1)), ExponentVector::from([-2, 2]));
        for k in -3..=3 {
            for (u1, u2) in [(1, 0), (0, 1), (2, -3), (-1, 4)] {
                let got = SkewForm::rank2(k).i_omega(&v(u1, u2));
                assert_eq!(got, ExponentVector::from([-k * u2, k * u1]));
            }
        }
    }

    #[test]
    fn reflection_examples() {
        let w = SkewForm::rank2(1);
        assert_eq!(reflect(&w, &v(1, 0), &v(0, 1)), v(1, 1));
        assert_eq!(reflect(&w, &v(2, 3), &v(2, 3)), v(2, 3));
        assert_eq!(reflect(&w, &v(0, 1), &v(1, 0)), v(1, -1));
    }

    #[test]
    fn pl_mutation_examples() {
        let w = SkewForm::rank2(1);
        assert_eq!(pl_mutate(&w, &v(1, 0), &v(0, 1)), v(1, 1));
        assert_eq!(pl_mutate(&w, &v(0, 1), &v(1, 0)), v(1, 0));
        assert_eq!(pl_mutate(&w, &v(3, -2), &v(3, -2)), v(3, -2));
        for a in -4..=4 {
            for b in -4..=4 {
                let x = v(a, b);
                assert_eq!(pl_mutate_inv(&w, &v(1, 2), &pl_mutate(&w, &v(1, 2), &x)), x);
            }
        }
    }

    #[test]
    fn primitivity() {
        assert!(is_primitive(&v(0, 1)));
        assert!(is_primitive(&v(-3, 2)));
        assert!(!is_primitive(&v(2, 4)));
        assert!(!is_primitive(&v(0, 0)));
    }

    #[test]
    fn basis_completion() {
        assert_eq!(complete_to_basis(&[1, 0]).unwrap(), IntMatrix::identity(2));
        assert_eq!(
            complete_to_basis(&[0, 1]).unwrap(),
            IntMatrix::from_rows(vec![vec![0, 1], vec![1, 0]])
        );
        for a in [vec![2, 3], vec![-5, 7], vec![3, -1, 4], vec![0, 6, -5], vec![-1, 0]] {
            let m = complete_to_basis(&a).unwrap();
            assert_eq!(m.det().abs(), 1, "{a:?}");
            let mut e1 = vec![0; a.len()];
            e1[0] = 1;
            assert_eq!(m.mul_vec(&a), e1, "{a:?}");
        }
        assert!(complete_to_basis(&[2, 4]).is_err());
        assert!(complete_to_basis(&[0, 0]).is_err());
    }

    #[test]
    fn sl2_identity_and_images() {
        let w = SkewForm::rank2(3);
        let (m, dual) = sl2_change_of_basis(&w, &v(1, 0), &v(0, 1)).unwrap();
        assert_eq!(m.matrix(), &IntMatrix::identity(2));
        assert_eq!(dual, IntMatrix::identity(2));

        let (m, _) = sl2_change_of_basis(&w, &v(1, 0), &v(1, 1)).unwrap();
        assert_eq!(m.push_forward(&v(1, 0)).unwrap(), v(1, 0));
        assert_eq!(m.push_forward(&v(1, 1)).unwrap(), v(0, 1));
        assert_eq!(m.target().k(), Some(3));

        assert_eq!(
            sl2_change_of_basis(&w, &v(1, 0), &v(0, 2)).unwrap_err(),
            LatticeError::DeterminantNotOne(2)
        );
    }

    #[test]
    fn sl2_noncollinear_lemma_coordinates() {
        // a = k, b = 1, c = -1, d = 0: z1 = x2, z2 = x1^-1 x2^k
        let k = 2;
        let w = SkewForm::rank2(k);
        let (_, dual) = sl2_change_of_basis(&w, &v(k, 1), &v(-1, 0)).unwrap();
        assert_eq!(dual.column(0), vec![0, 1]);
        assert_eq!(dual.column(1), vec![-1, k]);
    }

    #[test]
    fn incompatible_map_rejected() {
        let m = IntMatrix::from_rows(vec![vec![2, 0], vec![0, 1]]);
        assert_eq!(
            LatticeMap::new(m, SkewForm::rank2(1), SkewForm::rank2(1)).unwrap_err(),
            LatticeError::IncompatibleForms
        );
    }
}
