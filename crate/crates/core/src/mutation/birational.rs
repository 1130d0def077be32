use super::MutationError;
use crate::algebra::{BinomialRationalFn, ExponentVector, LaurentPoly};
use crate::lattice::{pair, IntMatrix, LatticeVector, SkewForm};

/// Which of the two equivalent display forms of a mutation to produce.
///
/// `Monomial` is the rule `X^m ↦ X^m (1 + X^{i_ω(u)})^{(u,m)}`; in rank two with
/// `u = e2`, `ω = ω_1` it sends `x2` to `x2 (1 + x1^{-1})`. `Coordinate` composes this with
/// the inverse reflection `X^m ↦ X^{m − (u,m) i_ω(u)}`, which gives `x2 ↦ x2 (1 + x1)`.
/// The two differ by a monomial automorphism, so Laurentness verdicts agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Convention {
    #[default]
    Monomial,
    Coordinate,
}

/// Mutates a Laurent polynomial `times` times in direction `u`:
/// `X^m ↦ X^m (1 + X^b)^{times·(u,m)}` with `b = i_ω(u)`.
///
/// `X^b` is fixed by the mutation since `(u, b) = ω(u, u) = 0`, which is why iterating
/// just scales the exponent. A degenerate direction (`b = 0`) acts as the identity.
pub fn mutate_laurent(w: &LaurentPoly, u: &LatticeVector, form: &SkewForm, times: u32) -> BinomialRationalFn {
    let b = form.i_omega(u);
    if b.is_zero() || times == 0 {
        return BinomialRationalFn::from_laurent(w.clone());
    }
    let graded = w.grade_by(u);
    let t = times as i64;
    let shift = graded.keys().map(|&l| -t * l).max().unwrap_or(0).max(0);
    let binomial = LaurentPoly::binomial(&b);
    let mut powers = vec![LaurentPoly::one(w.rank())];
    let mut numerator = LaurentPoly::zero(w.rank());
    for (l, piece) in graded {
        let e = (t * l + shift) as usize;
        while powers.len() <= e {
            let next = &powers[powers.len() - 1] * &binomial;
            powers.push(next);
        }
        numerator = &numerator + &(&piece * &powers[e]);
    }
    let factors = (shift > 0).then_some((b, shift as u32));
    BinomialRationalFn::new(numerator, factors).expect("nonzero direction")
}

/// The birational mutation `μ_{u,ω}` applied to a binomial rational function.
///
/// Denominator directions `a` with `(u, a) ≠ 0` are sent to non-binomial factors; such
/// inputs are rejected with [`MutationError::DenominatorNotInvariant`].
pub fn fn_mutate(
    f: &BinomialRationalFn,
    u: &LatticeVector,
    form: &SkewForm,
) -> Result<BinomialRationalFn, MutationError> {
    fn_mutate_iter(f, u, form, 1)
}

/// `fn_mutate` applied `times` times, computed in one pass.
pub fn fn_mutate_iter(
    f: &BinomialRationalFn,
    u: &LatticeVector,
    form: &SkewForm,
    times: u32,
) -> Result<BinomialRationalFn, MutationError> {
    if u.rank() != f.rank() || form.rank() != f.rank() {
        return Err(MutationError::RankMismatch { left: f.rank(), right: u.rank() });
    }
    if form.i_omega(u).is_zero() || times == 0 {
        return Ok(f.clone());
    }
    for dir in f.denominators().keys() {
        let pairing = pair(dir, u).expect("rank checked");
        if pairing != 0 {
            return Err(MutationError::DenominatorNotInvariant { direction: dir.clone(), pairing });
        }
    }
    let mutated = mutate_laurent(f.numerator(), u, form, times);
    let den = BinomialRationalFn::new(
        LaurentPoly::one(f.rank()),
        f.denominators().iter().map(|(d, &e)| (d.clone(), e)),
    )?;
    Ok(mutated.checked_mul(&den)?)
}

/// Mutation in the requested display convention.
pub fn fn_mutate_with(
    f: &BinomialRationalFn,
    u: &LatticeVector,
    form: &SkewForm,
    times: u32,
    convention: Convention,
) -> Result<BinomialRationalFn, MutationError> {
    let m = fn_mutate_iter(f, u, form, times)?;
    match convention {
        Convention::Monomial => Ok(m),
        Convention::Coordinate => {
            let inv = reflection_matrix(u, &form.negated(), times);
            Ok(m.monomial_substitution(&inv)?)
        }
    }
}

/// Matrix of the monomial automorphism `X^m ↦ X^{m + times·(u,m)·i_ω(u)}`.
fn reflection_matrix(u: &LatticeVector, form: &SkewForm, times: u32) -> IntMatrix {
    let b = form.i_omega(u);
    let r = u.rank();
    let mut m = IntMatrix::identity(r);
    for i in 0..r {
        for j in 0..r {
            m.set(i, j, m.get(i, j) + times as i64 * b.coords()[i] * u.coords()[j]);
        }
    }
    m
}

/// The reflection `R_{u,ω}` on Laurent polynomials: `X^m ↦ X^{m + (u,m) i_ω(u)}`.
pub fn reflection_automorphism(w: &LaurentPoly, u: &LatticeVector, form: &SkewForm) -> LaurentPoly {
    let b = form.i_omega(u);
    w.map_exponents(|m| {
        let l = pair(m, u).expect("rank checked");
        ExponentVector::new(m.coords().iter().zip(b.coords()).map(|(x, y)| x + l * y).collect())
    })
}
