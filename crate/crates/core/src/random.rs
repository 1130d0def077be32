//! Seeded random inputs for the property suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{rat, ExponentVector, LaurentPoly};
use crate::lattice::{is_primitive, IntMatrix, LatticeVector};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn nonzero<R: Rng>(rng: &mut R, bound: i64) -> i64 {
    loop {
        let c = rng.gen_range(-bound..=bound);
        if c != 0 {
            return c;
        }
    }
}

/// Nonzero Laurent polynomial with at most `max_terms` terms, exponents in
/// `[-max_exp, max_exp]` and nonzero integer coefficients in `[-max_coeff, max_coeff]`.
pub fn random_laurent<R: Rng>(rng: &mut R, rank: usize, max_terms: usize, max_exp: i64, max_coeff: i64) -> LaurentPoly {
    loop {
        let n = rng.gen_range(1..=max_terms);
        let mut w = LaurentPoly::zero(rank);
        for _ in 0..n {
            let e = ExponentVector::new((0..rank).map(|_| rng.gen_range(-max_exp..=max_exp)).collect());
            w.add_term(e, rat(nonzero(rng, max_coeff), 1));
        }
        if !w.is_zero() {
            return w;
        }
    }
}

/// Like [`random_laurent`] with coefficients `p/q`, `1 ≤ q ≤ 4`.
pub fn random_rational_laurent<R: Rng>(rng: &mut R, rank: usize, max_terms: usize, max_exp: i64) -> LaurentPoly {
    loop {
        let n = rng.gen_range(1..=max_terms);
        let mut w = LaurentPoly::zero(rank);
        for _ in 0..n {
            let e = ExponentVector::new((0..rank).map(|_| rng.gen_range(-max_exp..=max_exp)).collect());
            w.add_term(e, rat(nonzero(rng, 5), rng.gen_range(1..=4)));
        }
        if !w.is_zero() {
            return w;
        }
    }
}

/// Nonzero vector with coordinates in `[-max, max]`.
pub fn random_vector<R: Rng>(rng: &mut R, rank: usize, max: i64) -> LatticeVector {
    loop {
        let v = LatticeVector::new((0..rank).map(|_| rng.gen_range(-max..=max)).collect());
        if !v.is_zero() {
            return v;
        }
    }
}

pub fn random_primitive_vector<R: Rng>(rng: &mut R, rank: usize, max: i64) -> LatticeVector {
    loop {
        let v = random_vector(rng, rank, max);
        if is_primitive(&v) {
            return v;
        }
    }
}

/// Random element of `SL_2(Z)` as a product of `steps` elementary matrices.
pub fn random_sl2<R: Rng>(rng: &mut R, steps: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(2);
    for _ in 0..steps {
        let t = nonzero(rng, 1);
        let e = if rng.gen_bool(0.5) {
            IntMatrix::from_rows(vec![vec![1, t], vec![0, 1]])
        } else {
            IntMatrix::from_rows(vec![vec![1, 0], vec![t, 1]])
        };
        m = m.mul(&e);
    }
    m
}
