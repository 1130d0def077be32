use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ub_member, GeneratorPresentation, UpperBoundError};
use crate::algebra::{rat, ExponentVector, LaurentPoly};
use crate::lattice::{pair, SkewForm};
use crate::mutation::{fn_mutate_with, CSeed, Convention, ExchangeCollection};
use crate::LatticeVector;

/// Outcome of comparing membership before and after one mutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VLemmaCheck {
    pub member_before: bool,
    pub mutated_laurent: bool,
    /// Membership of the mutated function in the mutated seed, when it is Laurent.
    pub member_after: Option<bool>,
}

impl VLemmaCheck {
    pub fn holds(&self) -> bool {
        self.member_before == (self.mutated_laurent && self.member_after == Some(true))
    }
}

/// Compares `W ∈ U(Σ)` with `μ_d W ∈ U(μ_d Σ)`.
///
/// The mutated function is taken in the coordinate convention `R_d⁻¹ ∘ μ_d`, which matches
/// the identification of the mutated lattice with the original one.
pub fn verify_vlemma(seed: &CSeed, d: &LatticeVector, w: &LaurentPoly) -> Result<VLemmaCheck, UpperBoundError> {
    if !seed.collection().contains(d) {
        return Err(UpperBoundError::NotInCollection(d.clone()));
    }
    let member_before = ub_member(w, seed)?.verdict;
    let mutated = fn_mutate_with(&w.clone().into(), d, seed.form(), 1, Convention::Coordinate)?;
    let after_seed = CSeed::base(seed.form().clone(), seed.collection().mutate(d, seed.form())?)?;
    let (mutated_laurent, member_after) = match mutated.as_laurent() {
        Ok(l) => (true, Some(ub_member(&l, &after_seed)?.verdict)),
        Err(_) => (false, None),
    };
    Ok(VLemmaCheck { member_before, mutated_laurent, member_after })
}

/// Bounds for [`sample_ub_element`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleSize {
    pub terms: usize,
    pub max_power: u32,
    pub max_coeff: i64,
}

impl Default for SampleSize {
    fn default() -> Self {
        SampleSize { terms: 3, max_power: 2, max_coeff: 3 }
    }
}

/// Random element of the ring generated by `p`: a sum of random monomials in the generators
/// with nonzero integer coefficients. Deterministic in `seed`.
pub fn sample_ub_element(p: &GeneratorPresentation, size: SampleSize, seed: u64) -> LaurentPoly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = LaurentPoly::zero(2);
    for _ in 0..size.terms {
        let exps: Vec<u32> = (0..p.generators.len()).map(|_| rng.gen_range(0..=size.max_power)).collect();
        let mut c = 0;
        while c == 0 {
            c = rng.gen_range(-size.max_coeff..=size.max_coeff);
        }
        out = &out + &p.product(&exps).scale(&rat(c, 1));
    }
    out
}

/// Exponents `α_v` for which `X^m Π_v (1 + X^{i_ω(v)})^{α_v}` lies in `U(V)`.
///
/// Each `α` is raised until its direction's requirement is met; `None` if that does not
/// settle within `max_rounds` passes.
pub fn member_exponents(
    form: &SkewForm,
    collection: &ExchangeCollection,
    m: &ExponentVector,
    max_rounds: usize,
) -> Option<Vec<(LatticeVector, u32)>> {
    let dirs: Vec<(&LatticeVector, u32)> = collection.iter().collect();
    let mut alpha = vec![0i64; dirs.len()];
    for _ in 0..max_rounds {
        let mut changed = false;
        for (i, (v, mult)) in dirs.iter().enumerate() {
            let mut low = pair(m, v).ok()?;
            for (j, (w, _)) in dirs.iter().enumerate() {
                if j != i {
                    low = low.checked_add(alpha[j].checked_mul(form.eval(w, v).min(0))?)?;
                }
            }
            let need = (*mult as i64).checked_mul(low.checked_neg()?.max(0))?;
            if need > alpha[i] {
                alpha[i] = need;
                changed = true;
            }
        }
        if !changed {
            let exps = alpha.iter().map(|&a| u32::try_from(a).ok()).collect::<Option<Vec<_>>>()?;
            return Some(dirs.iter().map(|(v, _)| (*v).clone()).zip(exps).collect());
        }
    }
    None
}

/// A member of `U(V)` of the form `X^m Π_v (1 + X^{i_ω(v)})^{α_v}`, with the exponents of
/// [`member_exponents`].
pub fn constructed_member(
    form: &SkewForm,
    collection: &ExchangeCollection,
    m: &ExponentVector,
    max_rounds: usize,
) -> Option<LaurentPoly> {
    let alpha = member_exponents(form, collection, m, max_rounds)?;
    let mut out = LaurentPoly::unit_monomial(m.clone());
    for (v, a) in alpha {
        let b = form.i_omega(&v);
        if !b.is_zero() && a > 0 {
            out = &out * &LaurentPoly::binomial(&b).pow(a);
        }
    }
    Some(out)
}
