use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::laurent::format_monomial;
use super::{binomial_divide, rational_pow, AlgebraError, ExponentVector, LaurentPoly, Rational};
use crate::lattice::IntMatrix;

/// A Laurent polynomial divided by a product of binomial powers `(1 + X^a)^e`.
///
/// This is the class of functions produced by mutating Laurent polynomials. Directions
/// are stored sign-normalized (first nonzero coordinate positive) and pairwise distinct.
/// Values built through the public API are normalized: no denominator factor divides the
/// numerator.
///
/// Equality compares the functions, not the representations, by cross-multiplying.
#[derive(Debug, Clone)]
pub struct BinomialRationalFn {
    numerator: LaurentPoly,
    denominators: BTreeMap<ExponentVector, u32>,
}

/// Returned by [`BinomialRationalFn::as_laurent`] when a denominator factor survives
/// normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotLaurent {
    pub direction: ExponentVector,
    pub exponent: u32,
}

impl fmt::Display for NotLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "denominator factor {}", format_binomial(&self.direction, self.exponent))
    }
}

impl BinomialRationalFn {
    /// A Laurent polynomial viewed as a rational function.
    pub fn from_laurent(numerator: LaurentPoly) -> Self {
        BinomialRationalFn { numerator, denominators: BTreeMap::new() }
    }

    /// `numerator / Π (1 + X^a)^e`, normalized.
    pub fn new<I>(numerator: LaurentPoly, factors: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (ExponentVector, u32)>,
    {
        Ok(Self::new_unnormalized(numerator, factors)?.normalize())
    }

    /// Like [`BinomialRationalFn::new`] but keeps the factors exactly as given.
    pub fn new_unnormalized<I>(numerator: LaurentPoly, factors: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (ExponentVector, u32)>,
    {
        let mut denominators = BTreeMap::new();
        for (dir, e) in factors {
            if dir.rank() != numerator.rank() {
                return Err(AlgebraError::RankMismatch { left: numerator.rank(), right: dir.rank() });
            }
            if dir.is_zero() {
                return Err(AlgebraError::ZeroDirection);
            }
            if e == 0 {
                return Err(AlgebraError::ZeroExponent);
            }
            *denominators.entry(dir).or_insert(0) += e;
        }
        Ok(BinomialRationalFn { numerator, denominators })
    }

    pub fn rank(&self) -> usize {
        self.numerator.rank()
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.numerator
    }

    pub fn denominators(&self) -> &BTreeMap<ExponentVector, u32> {
        &self.denominators
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// The expanded denominator `Π (1 + X^a)^e`.
    pub fn denominator_poly(&self) -> LaurentPoly {
        self.denominators
            .iter()
            .fold(LaurentPoly::one(self.rank()), |acc, (a, &e)| {
                &acc * &LaurentPoly::binomial(a).pow(e)
            })
    }

    /// Sign-normalizes every direction and cancels every denominator factor that divides
    /// the numerator. Idempotent.
    pub fn normalize(&self) -> Self {
        let rank = self.rank();
        if self.numerator.is_zero() {
            return Self::from_laurent(LaurentPoly::zero(rank));
        }
        let mut numerator = self.numerator.clone();
        let mut denominators: BTreeMap<ExponentVector, u32> = BTreeMap::new();
        for (dir, &e) in &self.denominators {
            let (norm, flipped) = dir.sign_normalized();
            if flipped {
                // 1/(1 + X^a)^e = X^{-a e} / (1 + X^{-a})^e
                numerator = numerator.shift(&dir.scale(-(e as i64)));
            }
            *denominators.entry(norm).or_insert(0) += e;
        }
        for (dir, e) in denominators.iter_mut() {
            while *e > 0 {
                match binomial_divide(&numerator, dir, 1).expect("nonzero direction") {
                    super::BinomialDivision::Quotient(q) => {
                        numerator = q;
                        *e -= 1;
                    }
                    super::BinomialDivision::NotDivisible(_) => break,
                }
            }
        }
        denominators.retain(|_, e| *e > 0);
        BinomialRationalFn { numerator, denominators }
    }

    /// The Laurent polynomial this function equals, or the first denominator factor that
    /// survives normalization.
    pub fn as_laurent(&self) -> Result<LaurentPoly, NotLaurent> {
        let n = self.normalize();
        match n.denominators.iter().next() {
            None => Ok(n.numerator),
            Some((dir, &e)) => Err(NotLaurent { direction: dir.clone(), exponent: e }),
        }
    }

    pub fn is_laurent(&self) -> bool {
        self.as_laurent().is_ok()
    }

    fn check_rank(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.rank() != other.rank() {
            return Err(AlgebraError::RankMismatch { left: self.rank(), right: other.rank() });
        }
        Ok(())
    }

    /// Common denominator of two functions, given as the per-direction maximum, together
    /// with the cofactors that bring each numerator over it.
    fn common_denominator(&self, other: &Self) -> (BTreeMap<ExponentVector, u32>, LaurentPoly, LaurentPoly) {
        let mut common = self.denominators.clone();
        for (d, &e) in &other.denominators {
            let slot = common.entry(d.clone()).or_insert(0);
            *slot = (*slot).max(e);
        }
        let cofactor = |own: &BTreeMap<ExponentVector, u32>| {
            common.iter().fold(LaurentPoly::one(self.rank()), |acc, (d, &e)| {
                let have = own.get(d).copied().unwrap_or(0);
                &acc * &LaurentPoly::binomial(d).pow(e - have)
            })
        };
        let ca = cofactor(&self.denominators);
        let cb = cofactor(&other.denominators);
        (common, ca, cb)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_rank(other)?;
        let (common, ca, cb) = self.common_denominator(other);
        let numerator = &(&self.numerator * &ca) + &(&other.numerator * &cb);
        Ok(BinomialRationalFn { numerator, denominators: common }.normalize())
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_rank(other)?;
        let mut denominators = self.denominators.clone();
        for (d, &e) in &other.denominators {
            *denominators.entry(d.clone()).or_insert(0) += e;
        }
        let numerator = &self.numerator * &other.numerator;
        Ok(BinomialRationalFn { numerator, denominators }.normalize())
    }

    pub fn neg(&self) -> Self {
        BinomialRationalFn { numerator: -&self.numerator, denominators: self.denominators.clone() }
    }

    pub fn pow(&self, n: u32) -> Self {
        BinomialRationalFn {
            numerator: self.numerator.pow(n),
            denominators: self
                .denominators
                .iter()
                .filter(|_| n > 0)
                .map(|(d, &e)| (d.clone(), e * n))
                .collect(),
        }
        .normalize()
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, AlgebraError> {
        let num = self.numerator.evaluate(point)?;
        let mut den = Rational::one();
        for (d, &e) in &self.denominators {
            let mut xm = Rational::one();
            for (x, &k) in point.iter().zip(d.coords()) {
                xm *= rational_pow(x, k).expect("nonzero coordinate");
            }
            let b = Rational::one() + xm;
            if b.is_zero() {
                return Err(AlgebraError::VanishingDenominator);
            }
            den *= rational_pow(&b, e as i64).expect("nonzero");
        }
        Ok(num / den)
    }

    /// Pullback along the monomial map `X^m ↦ X^{M m}`, applied to numerator and
    /// denominator directions alike.
    pub fn monomial_substitution(&self, m: &IntMatrix) -> Result<Self, AlgebraError> {
        let numerator = self.numerator.monomial_substitution(m)?;
        let denominators = self
            .denominators
            .iter()
            .map(|(d, &e)| (ExponentVector::new(m.mul_vec(d.coords())), e));
        Self::new(numerator, denominators)
    }
}

impl PartialEq for BinomialRationalFn {
    fn eq(&self, other: &Self) -> bool {
        if self.rank() != other.rank() {
            return false;
        }
        if self.denominators == other.denominators {
            return self.numerator == other.numerator;
        }
        &self.numerator * &other.denominator_poly() == &other.numerator * &self.denominator_poly()
    }
}

impl Eq for BinomialRationalFn {}

impl From<LaurentPoly> for BinomialRationalFn {
    fn from(p: LaurentPoly) -> Self {
        Self::from_laurent(p)
    }
}

fn format_binomial(dir: &ExponentVector, e: u32) -> String {
    let base = format!("(1 + {})", format_monomial(dir));
    if e == 1 {
        base
    } else {
        format!("{base}^{e}")
    }
}

impl fmt::Display for BinomialRationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominators.is_empty() {
            return write!(f, "{}", self.numerator);
        }
        if self.numerator.len() == 1 && self.numerator.is_one() {
            write!(f, "1")?;
        } else {
            write!(f, "({})", self.numerator)?;
        }
        let parts: Vec<String> =
            self.denominators.iter().map(|(d, &e)| format_binomial(d, e)).collect();
        if parts.len() == 1 {
            write!(f, "/{}", parts[0])
        } else {
            write!(f, "/({})", parts.join("*"))
        }
    }
}
