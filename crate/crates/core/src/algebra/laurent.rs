use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{rational_pow, AlgebraError, ExponentVector, Rational};
use crate::lattice::{IntMatrix, LatticeVector};

/// A Laurent polynomial with rational coefficients in `rank` variables.
///
/// Terms are kept in a `BTreeMap` keyed by exponent, so iteration follows the
/// lexicographic order and no stored coefficient is ever zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    rank: usize,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl LaurentPoly {
    pub fn zero(rank: usize) -> Self {
        LaurentPoly { rank, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, Rational::one())
    }

    pub fn constant(rank: usize, c: Rational) -> Self {
        Self::monomial(ExponentVector::zero(rank), c)
    }

    pub fn monomial(exp: ExponentVector, c: Rational) -> Self {
        let rank = exp.rank();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { rank, terms }
    }

    /// `X^exp` with coefficient one.
    pub fn unit_monomial(exp: ExponentVector) -> Self {
        Self::monomial(exp, Rational::one())
    }

    /// The coordinate function `x_{i+1}`.
    pub fn var(rank: usize, i: usize) -> Self {
        Self::unit_monomial(ExponentVector::unit(rank, i))
    }

    /// `1 + X^dir`.
    pub fn binomial(dir: &ExponentVector) -> Self {
        &Self::one(dir.rank()) + &Self::unit_monomial(dir.clone())
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing duplicates.
    pub fn from_terms<I>(rank: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (ExponentVector, Rational)>,
    {
        let mut p = Self::zero(rank);
        for (e, c) in terms {
            assert_eq!(e.rank(), rank, "exponent rank mismatch");
            p.add_term(e, c);
        }
        p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().all(|(e, c)| e.is_zero() && c.is_one())
    }

    /// `Some((exp, coeff))` if the polynomial is a single nonzero term.
    pub fn as_monomial(&self) -> Option<(&ExponentVector, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &ExponentVector) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// Smallest term in the canonical order.
    pub fn leading_term(&self) -> Option<(&ExponentVector, &Rational)> {
        self.terms.iter().next()
    }

    pub fn add_term(&mut self, exp: ExponentVector, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_rank(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.rank != other.rank {
            return Err(AlgebraError::RankMismatch { left: self.rank, right: other.rank });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_rank(other)?;
        let mut out = Self::zero(self.rank);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.rank);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.rank);
        }
        LaurentPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Multiplies by the monomial `X^shift`.
    pub fn shift(&self, shift: &ExponentVector) -> Self {
        LaurentPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, c)| (e + shift, c.clone())).collect(),
        }
    }

    /// Splits `self` into homogeneous pieces for the grading `m ↦ (m, u)`.
    ///
    /// Every returned piece is nonzero and their sum is `self`.
    pub fn grade_by(&self, u: &LatticeVector) -> BTreeMap<i64, LaurentPoly> {
        assert_eq!(u.rank(), self.rank, "grading vector rank mismatch");
        let mut out: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let level: i64 = e.coords().iter().zip(u.coords()).map(|(a, b)| a * b).sum();
            out.entry(level)
                .or_insert_with(|| Self::zero(self.rank))
                .terms
                .insert(e.clone(), c.clone());
        }
        out
    }

    /// Pullback along a monomial map: every `X^m` becomes `X^{M m}`.
    pub fn monomial_substitution(&self, m: &IntMatrix) -> Result<Self, AlgebraError> {
        if m.rows() != self.rank || m.cols() != self.rank {
            return Err(AlgebraError::MatrixShape { rows: m.rows(), cols: m.cols(), rank: self.rank });
        }
        if m.det() == 0 {
            return Err(AlgebraError::SingularMatrix);
        }
        Ok(self.map_exponents(|e| ExponentVector::new(m.mul_vec(e.coords()))))
    }

    /// Applies an injective map to every exponent. Callers guarantee injectivity.
    pub(crate) fn map_exponents<F>(&self, f: F) -> Self
    where
        F: Fn(&ExponentVector) -> ExponentVector,
    {
        let mut out = Self::zero(self.rank);
        for (e, c) in &self.terms {
            let image = f(e);
            out.rank = image.rank();
            out.add_term(image, c.clone());
        }
        out
    }

    /// Gauss content: the positive gcd of the coefficients (gcd of numerators over lcm
    /// of denominators).
    pub fn content(&self) -> Result<Rational, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroContent);
        }
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        Ok(Rational::new(num.abs(), den))
    }

    /// True when every coefficient is an integer.
    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// True when no exponent has a negative coordinate.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.coords().iter().all(|&c| c >= 0))
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, AlgebraError> {
        if point.len() != self.rank {
            return Err(AlgebraError::RankMismatch { left: self.rank, right: point.len() });
        }
        if let Some(i) = point.iter().position(|p| p.is_zero()) {
            return Err(AlgebraError::ZeroCoordinate(i));
        }
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e.coords()) {
                // nonzero base, so the power always exists
                t *= rational_pow(x, k).expect("nonzero base");
            }
            total += t;
        }
        Ok(total)
    }

    /// Lowest and highest exponent of variable `i`, if nonzero.
    pub fn degree_range(&self, i: usize) -> Option<(i64, i64)> {
        let mut it = self.terms.keys().map(|e| e.coords()[i]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), d| (lo.min(d), hi.max(d))))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    /// Panics on rank mismatch; use [`LaurentPoly::checked_add`] to get an error.
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("rank mismatch")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("rank mismatch")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("rank mismatch")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Renders `X^e` as `x1^2*x2^-1`; empty for the zero exponent.
pub(crate) fn format_monomial(e: &ExponentVector) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.coords().iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(format!("x{}", i + 1)),
            _ => parts.push(format!("x{}^{}", i + 1, k)),
        }
    }
    parts.join("*")
}

/// Renders a single term with its sign folded into the coefficient.
fn format_term(e: &ExponentVector, c: &Rational) -> String {
    let mono = format_monomial(e);
    if mono.is_empty() {
        c.to_string()
    } else if c.is_one() {
        mono
    } else if *c == -Rational::one() {
        format!("-{mono}")
    } else {
        format!("{c}*{mono}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i == 0 {
                write!(f, "{}", format_term(e, c))?;
            } else if c.is_negative() {
                write!(f, " - {}", format_term(e, &-c.clone()))?;
            } else {
                write!(f, " + {}", format_term(e, c))?;
            }
        }
        Ok(())
    }
}
