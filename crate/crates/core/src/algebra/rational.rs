use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact rational coefficient. Always reduced, with a positive denominator.
pub type Rational = BigRational;

/// Shorthand for the rational `num / den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `base^exp` for any integer exponent; `None` when `base` is zero and `exp < 0`.
pub fn rational_pow(base: &Rational, exp: i64) -> Option<Rational> {
    if exp < 0 && base.is_zero() {
        return None;
    }
    let mut acc = Rational::one();
    let mut b = if exp < 0 { base.recip() } else { base.clone() };
    let mut e = exp.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow_handles_negative_exponents() {
        assert_eq!(rational_pow(&rat(1, 2), -3), Some(rat(8, 1)));
        assert_eq!(rational_pow(&rat(-2, 3), 3), Some(rat(-8, 27)));
        assert_eq!(rational_pow(&rat(0, 1), -1), None);
        assert_eq!(rational_pow(&rat(0, 1), 0), Some(rat(1, 1)));
    }

    #[test]
    fn zero_is_canonical() {
        let z = rat(0, 5);
        assert_eq!(z.denom(), &BigInt::from(1));
    }
}
