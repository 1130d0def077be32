//! Ring identities for the basis pair `{e1, m2×e2}` with form `ω_k`.
//!
//! With `T = 1 + x1^k` and `G = (x1^k + (1+x2^k)^k)^{m2} / (x1^{m2 k} x2)`:
//!
//! * `(x1^k + (1+x2^k)^k)/(x1^k x2) = (T/x2)·((1+x2^k)^k/x1^k) − Σ_j C(k,j) x2^{kj−1}`
//! * `T/x2 = x1^k·(x1^k + (1+x2^k)^k)/(x1^k x2) − Σ_j C(k,j) x2^{kj−1}`
//! * `Q[x1, x2, (1+x2^k)/x1, T^{m2}/x2] = Q[x1, x2, (1+x2^k)/x1, G]`
//!
//! The last one is checked by membership in both directions. `G` lies in the left ring by
//! the constructive decomposition. For the converse, `S = Σ_j C(k,j) x2^{kj−1}` satisfies
//! `(1+x2^k)^k = 1 + x2 S`, so `T^{m2}/x2 = x1^{m2 k} G − Σ_{i≥1} C(m2,i) T^{m2−i} S^i x2^{i−1}`,
//! and the sum is an ordinary polynomial.

use num_bigint::BigInt;
use num_traits::One;

use super::generators_for;
use crate::algebra::{ExponentVector, LaurentPoly, Rational};
use crate::lattice::{LatticeVector, SkewForm};
use crate::mutation::ExchangeCollection;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RingIdentityReport {
    pub first_identity: bool,
    pub second_identity: bool,
    /// `G` decomposes over the generators of the left ring.
    pub g_in_left_ring: bool,
    /// The certificate for `T^{m2}/x2` in the right ring checks out.
    pub t_in_right_ring: bool,
}

impl RingIdentityReport {
    pub fn all(&self) -> bool {
        self.first_identity && self.second_identity && self.g_in_left_ring && self.t_in_right_ring
    }
}

fn binom(n: u64, r: u64) -> Rational {
    let mut acc = BigInt::one();
    for i in 0..r {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_integer(acc)
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}

fn x(a: i64, b: i64) -> LaurentPoly {
    LaurentPoly::unit_monomial(ExponentVector::from([a, b]))
}

/// `Σ_{j=1}^k c(j) x2^{kj−1}`.
fn tail_sum(k: i64, c: impl Fn(u64) -> Rational) -> LaurentPoly {
    let mut s = LaurentPoly::zero(2);
    for j in 1..=k {
        s = &s + &x(0, k * j - 1).scale(&c(j as u64));
    }
    s
}

/// `(x1^k + (1+x2^k)^k) / (x1^k x2)`.
fn g1(k: i64) -> LaurentPoly {
    let inner = &x(k, 0) + &LaurentPoly::binomial(&[0, k].into()).pow(k as u32);
    &inner * &x(-k, -1)
}

/// Checks the second identity with an arbitrary coefficient family.
fn second_identity_with(k: i64, c: impl Fn(u64) -> Rational) -> bool {
    let lhs = &LaurentPoly::binomial(&[k, 0].into()) * &x(0, -1);
    let rhs = &(&x(k, 0) * &g1(k)) - &tail_sum(k, c);
    lhs == rhs
}

/// Whether the second identity holds with the coefficient `k!/(j·(k−j)!)` in place of the
/// binomial coefficient. It agrees with `C(k,j)` only for `j ≤ 2`.
pub fn printed_second_identity_holds(k: i64) -> bool {
    let ku = k as u64;
    second_identity_with(k, |j| {
        Rational::new(factorial(ku), BigInt::from(j) * factorial(ku - j))
    })
}

/// Verifies the identities above exactly for `k, m2 ≥ 1`.
pub fn verify_ring_identities(k: i64, m2: u32) -> RingIdentityReport {
    if k < 1 || m2 < 1 {
        return RingIdentityReport::default();
    }
    let ku = k as u64;
    let t = LaurentPoly::binomial(&[k, 0].into());
    let first = {
        let a = &t * &x(0, -1);
        let b = &LaurentPoly::binomial(&[0, k].into()).pow(k as u32) * &x(-k, 0);
        g1(k) == &(&a * &b) - &tail_sum(k, |j| binom(ku, j))
    };
    let second = second_identity_with(k, |j| binom(ku, j));

    let form = SkewForm::rank2(k);
    let left = ExchangeCollection::from_entries(
        2,
        [(LatticeVector::from([1, 0]), 1), (LatticeVector::from([0, 1]), m2)],
    )
    .expect("rank 2");
    let g = &(&x(k, 0) + &LaurentPoly::binomial(&[0, k].into()).pow(k as u32)).pow(m2)
        * &x(-(m2 as i64) * k, -1);
    let g_in_left = generators_for(&form, &left)
        .ok()
        .and_then(|p| p.decompose(&g).map(|d| d.reconstruct(&p) == g))
        .unwrap_or(false);

    let s = tail_sum(k, |j| binom(ku, j));
    let mut correction = LaurentPoly::zero(2);
    for i in 1..=m2 {
        let term = &(&t.pow(m2 - i) * &s.pow(i)) * &x(0, i as i64 - 1);
        correction = &correction + &term.scale(&binom(m2 as u64, i as u64));
    }
    let target = &t.pow(m2) * &x(0, -1);
    let t_in_right = correction.is_polynomial()
        && !correction.is_zero()
        && target == &(&x(m2 as i64 * k, 0) * &g) - &correction;

    RingIdentityReport { first_identity: first, second_identity: second, g_in_left_ring: g_in_left, t_in_right_ring: t_in_right }
}
