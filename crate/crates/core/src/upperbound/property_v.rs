use serde::Serialize;

use super::UpperBoundError;
use crate::algebra::{binomial_divide, BinomialDivision, BinomialRationalFn, LaurentPoly};
use crate::lattice::{LatticeVector, SkewForm};
use crate::mutation::{CSeed, ExchangeCollection};

/// Why an iterated mutation fails to be Laurent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentWitness {
    /// Smallest grade `l = (u, m)` whose piece is not divisible.
    pub grade: i64,
    /// Required power of the binomial, `-m·l`.
    pub required: u32,
    /// Number of factors that did divide.
    pub divided: u32,
    /// Remainder at the failing step.
    pub remainder: LaurentPoly,
}

impl LaurentWitness {
    /// Leading term of the remainder in the canonical order, rendered.
    pub fn leading_term(&self) -> String {
        match self.remainder.leading_term() {
            Some((e, c)) => LaurentPoly::monomial(e.clone(), c.clone()).to_string(),
            None => "0".to_string(),
        }
    }

    pub fn describe(&self) -> String {
        format!(
            "grade {}: divisible by {} of {} binomial factors, remainder leading term {}",
            self.grade,
            self.divided,
            self.required,
            self.leading_term()
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentVerdict {
    pub laurent: bool,
    pub witness: Option<LaurentWitness>,
}

/// Decides whether `(μ_u)^m W` is a Laurent polynomial.
///
/// With `b = i_ω(u)` and `W = Σ_l W_l` graded by `l = (u, ·)`, the image is
/// `Σ_l W_l (1 + X^b)^{m·l}`. Since `1 + X^b` has grade zero, it is Laurent exactly when every
/// `W_l` with `l < 0` is divisible by `(1 + X^b)^{-m·l}`.
pub fn mutation_is_laurent(w: &LaurentPoly, u: &LatticeVector, form: &SkewForm, m: u32) -> LaurentVerdict {
    let b = form.i_omega(u);
    if b.is_zero() || m == 0 {
        return LaurentVerdict { laurent: true, witness: None };
    }
    for (l, piece) in w.grade_by(u) {
        if l >= 0 {
            break;
        }
        let required = (-(l * m as i64)) as u32;
        match binomial_divide(&piece, &b, required).expect("ranks agree") {
            BinomialDivision::Quotient(_) => {}
            BinomialDivision::NotDivisible(rw) => {
                return LaurentVerdict {
                    laurent: false,
                    witness: Some(LaurentWitness {
                        grade: l,
                        required,
                        divided: rw.factors_divided,
                        remainder: rw.remainder,
                    }),
                }
            }
        }
    }
    LaurentVerdict { laurent: true, witness: None }
}

/// Result for one direction of the collection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirectionResult {
    pub vector: LatticeVector,
    pub multiplicity: u32,
    pub laurent: bool,
    pub witness: Option<String>,
    #[serde(skip)]
    pub detail: Option<LaurentWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MembershipReport {
    pub verdict: bool,
    pub w_laurent: bool,
    /// Set when `W` itself is not Laurent.
    pub w_witness: Option<String>,
    pub directions: Vec<DirectionResult>,
}

/// Checks property (V) for a Laurent polynomial.
pub fn check_property_v(w: &LaurentPoly, v: &ExchangeCollection, form: &SkewForm) -> MembershipReport {
    let directions: Vec<DirectionResult> = v
        .iter()
        .map(|(vec, mult)| {
            let verdict = mutation_is_laurent(w, vec, form, mult);
            DirectionResult {
                vector: vec.clone(),
                multiplicity: mult,
                laurent: verdict.laurent,
                witness: verdict.witness.as_ref().map(LaurentWitness::describe),
                detail: verdict.witness,
            }
        })
        .collect();
    MembershipReport {
        verdict: directions.iter().all(|d| d.laurent),
        w_laurent: true,
        w_witness: None,
        directions,
    }
}

/// Property (V) for a rational function; a non-Laurent input fails immediately and no
/// directions are examined.
pub fn check_property_v_fn(
    w: &BinomialRationalFn,
    v: &ExchangeCollection,
    form: &SkewForm,
) -> MembershipReport {
    match w.as_laurent() {
        Ok(l) => check_property_v(&l, v, form),
        Err(e) => MembershipReport {
            verdict: false,
            w_laurent: false,
            w_witness: Some(e.to_string()),
            directions: Vec::new(),
        },
    }
}

/// Upper-bound membership for a seed whose cluster is the base one.
pub fn ub_member(w: &LaurentPoly, seed: &CSeed) -> Result<MembershipReport, UpperBoundError> {
    if !seed.is_base_cluster() {
        return Err(UpperBoundError::NonBaseCluster);
    }
    Ok(check_property_v(w, seed.collection(), seed.form()))
}
