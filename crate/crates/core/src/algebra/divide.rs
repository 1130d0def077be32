//! Exact division by binomial powers `(1 + X^a)^e`.
//!
//! The direction `a = g·a0` (with `a0` primitive) is rectified by a unimodular change of
//! exponent coordinates sending `a0` to the first basis vector. In the new coordinates the
//! divisor is `(1 + y1^g)^e` and only involves `y1`, so the division splits into
//! independent univariate divisions, one per value of the remaining coordinates.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::Zero;

use super::{AlgebraError, ExponentVector, LaurentPoly, Rational};
use crate::lattice::complete_to_basis;

/// Outcome of [`binomial_divide`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BinomialDivision {
    /// `W = quotient · (1 + X^a)^e`.
    Quotient(LaurentPoly),
    NotDivisible(RemainderWitness),
}

/// Evidence that a binomial power does not divide a polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemainderWitness {
    /// Number of factors `(1 + X^a)` that did divide before the failure.
    pub factors_divided: u32,
    /// Nonzero remainder of the failing division step.
    pub remainder: LaurentPoly,
}

impl BinomialDivision {
    pub fn quotient(&self) -> Option<&LaurentPoly> {
        match self {
            BinomialDivision::Quotient(q) => Some(q),
            BinomialDivision::NotDivisible(_) => None,
        }
    }

    pub fn is_divisible(&self) -> bool {
        matches!(self, BinomialDivision::Quotient(_))
    }
}

/// Divides `w` by `(1 + X^a)^e` in the Laurent ring.
pub fn binomial_divide(
    w: &LaurentPoly,
    a: &ExponentVector,
    e: u32,
) -> Result<BinomialDivision, AlgebraError> {
    if a.rank() != w.rank() {
        return Err(AlgebraError::RankMismatch { left: w.rank(), right: a.rank() });
    }
    if a.is_zero() {
        return Err(AlgebraError::ZeroDirection);
    }
    if e == 0 {
        return Ok(BinomialDivision::Quotient(w.clone()));
    }
    let g = a.coords().iter().fold(0i64, |acc, &c| acc.gcd(&c));
    let primitive: Vec<i64> = a.coords().iter().map(|c| c / g).collect();
    let basis = complete_to_basis(&primitive).expect("primitive by construction");
    let inverse = basis.inverse().expect("unimodular by construction");

    let mut current = w.map_exponents(|m| ExponentVector::new(basis.mul_vec(m.coords())));
    for done in 0..e {
        match divide_once(&current, g) {
            Ok(q) => current = q,
            Err(rem) => {
                let remainder =
                    rem.map_exponents(|m| ExponentVector::new(inverse.mul_vec(m.coords())));
                return Ok(BinomialDivision::NotDivisible(RemainderWitness {
                    factors_divided: done,
                    remainder,
                }));
            }
        }
    }
    Ok(BinomialDivision::Quotient(
        current.map_exponents(|m| ExponentVector::new(inverse.mul_vec(m.coords()))),
    ))
}

/// `true` iff `(1 + X^a)^e` divides `w` up to a monomial unit. Since
/// `1 + X^{-a} = X^{-a}(1 + X^a)`, the answer does not depend on the sign of `a`.
pub fn is_divisible_up_to_unit(
    w: &LaurentPoly,
    a: &ExponentVector,
    e: u32,
) -> Result<bool, AlgebraError> {
    let (a, _) = a.sign_normalized();
    Ok(binomial_divide(w, &a, e)?.is_divisible())
}

/// Divides by `1 + y1^g` where `y1` is the first coordinate. On failure returns the
/// remainder, gathered over all slices.
fn divide_once(w: &LaurentPoly, g: i64) -> Result<LaurentPoly, LaurentPoly> {
    let rank = w.rank();
    let mut slices: BTreeMap<Vec<i64>, BTreeMap<i64, Rational>> = BTreeMap::new();
    for (e, c) in w.terms() {
        let (head, tail) = e.coords().split_first().expect("rank >= 1");
        slices.entry(tail.to_vec()).or_default().insert(*head, c.clone());
    }
    let mut quotient = LaurentPoly::zero(rank);
    let mut remainder = LaurentPoly::zero(rank);
    for (tail, poly) in slices {
        let join = |d: i64| {
            let mut v = Vec::with_capacity(rank);
            v.push(d);
            v.extend_from_slice(&tail);
            ExponentVector::new(v)
        };
        match divide_univariate(poly, g) {
            Ok(q) => {
                for (d, c) in q {
                    quotient.add_term(join(d), c);
                }
            }
            Err(r) => {
                for (d, c) in r {
                    remainder.add_term(join(d), c);
                }
            }
        }
    }
    if remainder.is_zero() {
        Ok(quotient)
    } else {
        Err(remainder)
    }
}

/// Exact division of a univariate Laurent polynomial by `1 + t^g`, `g > 0`, working
/// down from the top degree. The quotient cannot reach below the lowest degree of the
/// dividend, which bounds the loop.
pub(crate) fn divide_univariate(
    mut rem: BTreeMap<i64, Rational>,
    g: i64,
) -> Result<BTreeMap<i64, Rational>, BTreeMap<i64, Rational>> {
    debug_assert!(g > 0);
    let Some(&low) = rem.keys().next() else {
        return Ok(BTreeMap::new());
    };
    let mut quotient = BTreeMap::new();
    while let Some((top, c)) = rem.pop_last() {
        let q = top - g;
        if q < low {
            rem.insert(top, c);
            return Err(rem);
        }
        let slot = rem.entry(q).or_insert_with(Rational::zero);
        *slot -= &c;
        if slot.is_zero() {
            rem.remove(&q);
        }
        quotient.insert(q, c);
    }
    Ok(quotient)
}
