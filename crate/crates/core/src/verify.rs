//! Randomized and exhaustive property suites, shared by the CLI and the test targets.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::algebra::{rat, ExponentVector, LaurentPoly};
use crate::lattice::{pl_mutate, pl_mutate_inv, reflect, LatticeVector, SkewForm};
use crate::mutation::{
    b_matrix, collection_mutate_ordered, fn_mutate, fn_mutate_iter, reflection_automorphism, CSeed,
    ExchangeCollection,
};
use crate::random::{random_laurent, random_primitive_vector, random_sl2, random_vector, rng};
use crate::upperbound::{
    check_property_v, constructed_member, generators_for, member_exponents, member_via_generators, member_via_sublattice,
    sample_ub_element, verify_ring_identities, verify_vlemma, SampleSize,
};

/// At most this many failure descriptions are kept per suite.
const MAX_FAILURES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub cases: usize,
    pub passed: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    fn new(suite: &str) -> Self {
        SuiteResult { suite: suite.to_string(), cases: 0, passed: 0, failures: Vec::new() }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if ok {
            self.passed += 1;
        } else if self.failures.len() < MAX_FAILURES {
            self.failures.push(describe());
        }
    }

    pub fn ok(&self) -> bool {
        self.passed == self.cases
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}/{} passed", self.suite, self.passed, self.cases)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Pl,
    Birational,
    Bmatrix,
    Content,
    Ub,
    Vlemma,
    Identities,
    All,
}

impl Suite {
    pub const EACH: [Suite; 7] =
        [Suite::Pl, Suite::Birational, Suite::Bmatrix, Suite::Content, Suite::Ub, Suite::Vlemma, Suite::Identities];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Pl => "pl",
            Suite::Birational => "birational",
            Suite::Bmatrix => "bmatrix",
            Suite::Content => "content",
            Suite::Ub => "ub",
            Suite::Vlemma => "vlemma",
            Suite::Identities => "identities",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::EACH
            .iter()
            .chain(&[Suite::All])
            .copied()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

/// Runs a suite (or all of them) with `cases` random cases each.
pub fn run(suite: Suite, cases: usize, seed: u64) -> Vec<SuiteResult> {
    match suite {
        Suite::All => Suite::EACH.iter().map(|&s| run_one(s, cases, seed)).collect(),
        s => vec![run_one(s, cases, seed)],
    }
}

fn run_one(suite: Suite, cases: usize, seed: u64) -> SuiteResult {
    match suite {
        Suite::Pl => pl_suite(cases, seed),
        Suite::Birational => birational_suite(cases, seed),
        Suite::Bmatrix => bmatrix_suite(cases, seed),
        Suite::Content => content_suite(cases, seed),
        Suite::Ub => ub_suite(cases, seed),
        Suite::Vlemma => vlemma_suite(cases, seed),
        Suite::Identities => identities_suite(),
        Suite::All => unreachable!("expanded by run"),
    }
}

fn pl_case(k: i64, u: &LatticeVector, v: &LatticeVector, a: i64, b: i64) -> bool {
    let w = SkewForm::rank2(k);
    let r = reflect(&w, u, v);
    let there = pl_mutate(&w, u, v);
    let ab2 = a * b * b;
    pl_mutate(&w, &u.neg(), &there) == r
        && pl_mutate_inv(&w, u, &there) == *v
        && pl_mutate(&w, u, &pl_mutate_inv(&w, u, v)) == *v
        && reflect(&w.scaled(a), &u.scale(b), v) == v.add_scaled(u, ab2 * w.eval(u, v))
        && (0..ab2).fold(v.clone(), |acc, _| reflect(&w, u, &acc)) == reflect(&w.scaled(a), &u.scale(b), v)
}

/// Piecewise-linear identities on the full grid `|v|∞ ≤ 10`, five directions,
/// `k, a, b ∈ {1, 2, 3}`.
pub fn pl_exhaustive() -> SuiteResult {
    let mut r = SuiteResult::new("pl-exhaustive");
    let dirs: [[i64; 2]; 5] = [[0, 1], [1, 0], [1, 1], [1, -1], [2, 1]];
    for k in 1..=3 {
        for u in dirs {
            let u = LatticeVector::from(u);
            for x in -10..=10 {
                for y in -10..=10 {
                    let v = LatticeVector::from([x, y]);
                    for a in 1..=3 {
                        for b in 1..=3 {
                            r.record(pl_case(k, &u, &v, a, b), || format!("k={k} u={u} v={v} a={a} b={b}"));
                        }
                    }
                }
            }
        }
    }
    r
}

pub fn pl_suite(cases: usize, seed: u64) -> SuiteResult {
    let mut r = SuiteResult::new("pl");
    let mut g = rng(seed);
    for _ in 0..cases {
        let k = g.gen_range(1..=3);
        let u = random_vector(&mut g, 2, 3);
        let v = LatticeVector::from([g.gen_range(-10..=10), g.gen_range(-10..=10)]);
        let (a, b) = (g.gen_range(1..=3), g.gen_range(1..=3));
        r.record(pl_case(k, &u, &v, a, b), || format!("k={k} u={u} v={v} a={a} b={b}"));
    }
    r
}

fn birational_case(w: &LaurentPoly, u: &LatticeVector, k: i64, m: u32, a: &crate::IntMatrix) -> Result<(), String> {
    let form = SkewForm::rank2(k);
    let f = w.clone().into();
    let once = fn_mutate(&f, u, &form).map_err(|e| e.to_string())?;
    let back = fn_mutate(&once, &u.neg(), &form.negated()).map_err(|e| e.to_string())?;
    if back != f {
        return Err("inverse".into());
    }
    let twice = fn_mutate(&once, &u.neg(), &form).map_err(|e| e.to_string())?;
    if twice != reflection_automorphism(w, u, &form).into() {
        return Err("reflection".into());
    }
    let mut iterated = f.clone();
    for _ in 0..m {
        iterated = fn_mutate(&iterated, u, &form).map_err(|e| e.to_string())?;
    }
    if iterated != fn_mutate_iter(&f, u, &form, m).map_err(|e| e.to_string())? {
        return Err("iterate".into());
    }
    // exponents transform by A^{-T} when vectors move by A
    let dual = a.inverse().ok_or("singular")?.transpose();
    let au = LatticeVector::new(a.mul_vec(u.coords()));
    let lhs = fn_mutate(&f.monomial_substitution(&dual).map_err(|e| e.to_string())?, &au, &form)
        .map_err(|e| e.to_string())?;
    let rhs = once.monomial_substitution(&dual).map_err(|e| e.to_string())?;
    if lhs != rhs {
        return Err("conjugation".into());
    }
    Ok(())
}

pub fn birational_suite(cases: usize, seed: u64) -> SuiteResult {
    let mut r = SuiteResult::new("birational");
    let mut g = rng(seed);
    for _ in 0..cases {
        let w = random_laurent(&mut g, 2, 8, 4, 5);
        let u = random_vector(&mut g, 2, 2);
        let k = g.gen_range(1..=3);
        let m = g.gen_range(1..=3);
        let a = random_sl2(&mut g, 3);
        let res = birational_case(&w, &u, k, m, &a);
        r.record(res.is_ok(), || format!("W={w} u={u} k={k} m={m}: {}", res.unwrap_err()));
    }
    r
}

pub fn bmatrix_suite(cases: usize, seed: u64) -> SuiteResult {
    let mut r = SuiteResult::new("bmatrix");
    let mut g = rng(seed);
    for _ in 0..cases {
        let n = g.gen_range(1..=6);
        let v: Vec<LatticeVector> = (0..n).map(|_| random_vector(&mut g, 2, 5)).collect();
        let form = SkewForm::rank2(g.gen_range(1..=3));
        let k = g.gen_range(0..n);
        let b = b_matrix(&v, &form);
        let mutated = b.mutate(k).expect("index in range");
        let ok = b_matrix(&collection_mutate_ordered(&v, k, &form).expect("in range"), &form) == mutated
            && mutated.mutate(k).expect("in range") == b;
        r.record(ok, || format!("V={v:?} k={k} form={}", form.matrix()));
    }
    r
}

fn random_collection<R: Rng>(g: &mut R, max_vectors: usize) -> ExchangeCollection {
    let n = g.gen_range(1..=max_vectors);
    let entries: Vec<(LatticeVector, u32)> =
        (0..n).map(|_| (random_primitive_vector(g, 2, 2), g.gen_range(1..=3))).collect();
    ExchangeCollection::from_entries(2, entries).expect("rank 2")
}

/// Larger constructed members make the mutation checks slow without adding coverage.
const MAX_MEMBER_TERMS: u64 = 40;

/// Integer member of `U(V)` built from constructed members, or `None` if construction
/// does not settle.
fn integer_member<R: Rng>(g: &mut R, form: &SkewForm, c: &ExchangeCollection) -> Option<LaurentPoly> {
    let mut w = LaurentPoly::zero(2);
    for _ in 0..g.gen_range(1..=2) {
        let t = (0..8).find_map(|_| {
            let m = ExponentVector::new(vec![g.gen_range(-3..=3), g.gen_range(-3..=3)]);
            let alpha = member_exponents(form, c, &m, 8)?;
            let size: u64 = alpha.iter().map(|(_, a)| *a as u64 + 1).product();
            if size > MAX_MEMBER_TERMS {
                return None;
            }
            constructed_member(form, c, &m, 8)
        })?;
        w = &w + &t.scale(&rat(g.gen_range(1..=4) * if g.gen_bool(0.5) { 1 } else { -1 }, 1));
    }
    (!w.is_zero()).then_some(w)
}

pub fn content_suite(cases: usize, seed: u64) -> SuiteResult {
    let mut r = SuiteResult::new("content");
    let mut g = rng(seed);
    for _ in 0..cases {
        let f = random_laurent(&mut g, 2, 6, 3, 12);
        let h = random_laurent(&mut g, 2, 6, 3, 12);
        let mult = (&f * &h).content().ok() == Some(f.content().unwrap() * h.content().unwrap());
        let form = SkewForm::rank2(g.gen_range(1..=3));
        let mut integral = true;
        let mut w = None;
        for _ in 0..20 {
            let c = random_collection(&mut g, 3);
            if let Some(x) = integer_member(&mut g, &form, &c) {
                w = Some((c, x));
                break;
            }
        }
        if let Some((c, w)) = &w {
            for (v, m) in c.iter() {
                let out = fn_mutate_iter(&w.clone().into(), v, &form, m).ok().and_then(|x| x.as_laurent().ok());
                integral &= out.is_some_and(|x| x.has_integer_coefficients());
            }
        }
        r.record(mult && integral && w.is_some(), || format!("f={f} h={h} member={w:?}"));
    }
    r
}

/// A random seed of one of the supported shapes, plus a sublattice pair.
fn random_supported_seed<R: Rng>(g: &mut R, kind: usize) -> (SkewForm, ExchangeCollection) {
    let k = g.gen_range(1..=3) * if g.gen_bool(0.5) { 1 } else { -1 };
    let form = SkewForm::rank2(k);
    let (m1, m2) = (g.gen_range(1..=3), g.gen_range(1..=3));
    let entries = match kind {
        0 => vec![(random_primitive_vector(g, 2, 2), m1)],
        1 => {
            let v = random_primitive_vector(g, 2, 2);
            vec![(v.clone(), m1), (v.neg(), m2)]
        }
        2 => {
            let a = random_sl2(g, 2);
            vec![(LatticeVector::new(a.column(0)), m1), (LatticeVector::new(a.column(1)), m2)]
        }
        _ => {
            let pairs = [([1, 0], [1, 2]), ([1, 1], [1, -1]), ([2, 1], [1, 2]), ([1, 0], [1, 3]), ([0, 1], [3, 1])];
            let (a, b) = pairs[g.gen_range(0..pairs.len())];
            vec![(a.into(), m1), (b.into(), m2)]
        }
    };
    (form, ExchangeCollection::from_entries(2, entries).expect("rank 2"))
}

fn small_sample() -> SampleSize {
    SampleSize { terms: 2, max_power: 2, max_coeff: 3 }
}

/// A function to test against a seed: a ring sample, a perturbed sample or random noise.
fn candidate<R: Rng>(g: &mut R, form: &SkewForm, c: &ExchangeCollection, kind: usize) -> LaurentPoly {
    let member = match generators_for(form, c) {
        Ok(p) => Some(sample_ub_element(&p, small_sample(), g.gen())),
        Err(_) => integer_member(g, form, c),
    };
    match (g.gen_range(0..4), member) {
        (0 | 1, Some(w)) => w,
        (2, Some(w)) => &w + &random_laurent(g, 2, 1, 2, 3),
        _ if kind == 3 => random_laurent(g, 2, 4, 3, 5),
        _ => random_laurent(g, 2, 6, 3, 5),
    }
}

pub fn ub_suite(cases: usize, seed: u64) -> SuiteResult {
    let mut r = SuiteResult::new("ub");
    let mut g = rng(seed);
    for i in 0..cases {
        let kind = i % 4;
        let (form, c) = random_supported_seed(&mut g, kind);
        let sampled = g.gen_bool(0.5);
        let w = if kind < 3 && sampled {
            let p = generators_for(&form, &c).expect("supported");
            sample_ub_element(&p, small_sample(), g.gen())
        } else {
            candidate(&mut g, &form, &c, kind)
        };
        let truth = check_property_v(&w, &c, &form).verdict;
        let ok = if kind < 3 {
            let p = generators_for(&form, &c).expect("supported");
            let sound = p.generators.iter().all(|x| check_property_v(x, &c, &form).verdict);
            member_via_generators(&w, &form, &c) == Ok(truth) && sound && (!sampled || truth)
        } else {
            member_via_sublattice(&w, &form, &c) == Ok(truth)
        };
        r.record(ok, || format!("form={} V={c} W={w} verdict={truth}", form.matrix()));
    }
    r
}

pub fn vlemma_suite(cases: usize, seed: u64) -> SuiteResult {
    let mut r = SuiteResult::new("vlemma");
    let mut g = rng(seed);
    for i in 0..cases {
        let kind = 1 + i % 3;
        let (form, c) = random_supported_seed(&mut g, kind);
        let w = candidate(&mut g, &form, &c, kind);
        let dirs: Vec<LatticeVector> = c.iter().map(|(v, _)| v.clone()).collect();
        let d = dirs.choose(&mut g).expect("nonempty").clone();
        let seed = CSeed::base(form.clone(), c.clone()).expect("rank 2");
        let res = verify_vlemma(&seed, &d, &w);
        r.record(res.as_ref().is_ok_and(|x| x.holds()), || format!("V={c} d={d} W={w}: {res:?}"));
    }
    r
}

pub fn identities_suite() -> SuiteResult {
    let mut r = SuiteResult::new("identities");
    for k in 1..=3 {
        for m2 in 1..=2 {
            let rep = verify_ring_identities(k, m2);
            r.record(rep.all(), || format!("k={k} m2={m2}: {rep:?}"));
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_pass() {
        for s in run(Suite::All, 12, 1) {
            assert!(s.ok(), "{s}: {:?}", s.failures);
        }
    }

    #[test]
    fn suite_names() {
        assert_eq!("vlemma".parse::<Suite>(), Ok(Suite::Vlemma));
        assert!("nope".parse::<Suite>().is_err());
    }
}
