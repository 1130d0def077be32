//! Generator presentations for rank-two seeds with at most two directions.
//!
//! Each supported seed is moved by a unimodular change of exponent coordinates `n = A·m`
//! (rows of `A` are lattice vectors) into one of three models in variables `z1, z2`:
//!
//! * one vector `m×e2`: `Q[z1^±, z2, (1+z1^K)^m / z2]`
//! * opposite pair `m1×e2, m2×(−e2)`: `Q[z1^±, z2 (1+z1^K)^{m2}, (1+z1^K)^{m1} / z2]`
//! * basis pair `m1×e1, m2×e2`: `Q[z1, z2, (1+z2^K)^{m1} / z1, (1+z1^K)^{m2} / z2]`
//!
//! where `K = |ω(v1, v2)|` for the rows `v1, v2` of `A`.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use super::UpperBoundError;
use crate::algebra::{binomial_divide, ExponentVector, LaurentPoly, Rational};
use crate::lattice::{IntMatrix, LatticeVector, SkewForm};
use crate::mutation::ExchangeCollection;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShapeTag {
    OneVector,
    OppositePair,
    UnimodularPair,
}

impl fmt::Display for ShapeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShapeTag::OneVector => "one-vector",
            ShapeTag::OppositePair => "opposite-pair",
            ShapeTag::UnimodularPair => "unimodular-pair",
        })
    }
}

/// Classification of a rank-two collection with one or two distinct primitive vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeedShape {
    OneVector { v: LatticeVector, m: u32 },
    /// `m1` copies of `v`, `m2` copies of `−v`; `v` has positive leading coordinate.
    OppositePair { v: LatticeVector, m1: u32, m2: u32 },
    /// Ordered so that `det[v1; v2] = 1`.
    UnimodularPair { v1: LatticeVector, m1: u32, v2: LatticeVector, m2: u32 },
    /// Non-collinear pair with `det[v1; v2] = det > 1`.
    SublatticePair { v1: LatticeVector, m1: u32, v2: LatticeVector, m2: u32, det: i64 },
}

impl SeedShape {
    pub fn tag(&self) -> Option<ShapeTag> {
        match self {
            SeedShape::OneVector { .. } => Some(ShapeTag::OneVector),
            SeedShape::OppositePair { .. } => Some(ShapeTag::OppositePair),
            SeedShape::UnimodularPair { .. } => Some(ShapeTag::UnimodularPair),
            SeedShape::SublatticePair { .. } => None,
        }
    }
}

fn det2(a: &LatticeVector, b: &LatticeVector) -> i64 {
    a.coords()[0] * b.coords()[1] - a.coords()[1] * b.coords()[0]
}

/// Classifies `collection`. Requires rank 2, a nondegenerate form and primitive vectors.
pub fn detect_shape(form: &SkewForm, collection: &ExchangeCollection) -> Result<SeedShape, UpperBoundError> {
    if form.rank() != 2 || collection.rank() != 2 {
        return Err(UpperBoundError::NotRankTwo(form.rank().max(collection.rank())));
    }
    if form.is_degenerate() {
        return Err(UpperBoundError::UnsupportedShape("degenerate form".into()));
    }
    if !collection.all_primitive() {
        return Err(UpperBoundError::UnsupportedShape("non-primitive vector".into()));
    }
    let entries: Vec<(LatticeVector, u32)> = collection.iter().map(|(v, m)| (v.clone(), m)).collect();
    match entries.as_slice() {
        [] => Err(UpperBoundError::UnsupportedShape("empty collection".into())),
        [(v, m)] => Ok(SeedShape::OneVector { v: v.clone(), m: *m }),
        [(a, ma), (b, mb)] => {
            let d = det2(a, b);
            if d == 0 {
                // distinct primitive collinear vectors are opposite
                let (v, m1, m2) = if a.coords() > a.neg().coords() { (a, *ma, *mb) } else { (b, *mb, *ma) };
                return Ok(SeedShape::OppositePair { v: v.clone(), m1, m2 });
            }
            let ((v1, m1), (v2, m2)) = if d > 0 { ((a, *ma), (b, *mb)) } else { ((b, *mb), (a, *ma)) };
            let det = d.abs();
            let (v1, v2) = (v1.clone(), v2.clone());
            if det == 1 {
                Ok(SeedShape::UnimodularPair { v1, m1, v2, m2 })
            } else {
                Ok(SeedShape::SublatticePair { v1, m1, v2, m2, det })
            }
        }
        _ => Err(UpperBoundError::UnsupportedShape(format!(
            "{} distinct vectors; presentations exist for at most two",
            entries.len()
        ))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Model {
    One { m: u32 },
    Opposite { m1: u32, m2: u32 },
    Basis { m1: u32, m2: u32 },
}

/// `v1` with `det[v1; v] = 1`.
fn complement(v: &LatticeVector) -> LatticeVector {
    let (p, q) = (v.coords()[0], v.coords()[1]);
    let eg = p.extended_gcd(&q);
    let s = eg.gcd.signum();
    // p·x + q·y = 1, so det[(y, −x); (p, q)] = y·q + x·p = 1
    LatticeVector::from([s * eg.y, -s * eg.x])
}

fn rows(v1: &LatticeVector, v2: &LatticeVector) -> IntMatrix {
    IntMatrix::from_rows(vec![v1.coords().to_vec(), v2.coords().to_vec()])
}

/// Model, substitution matrix `A` and `K` for a shape.
fn rectify(form: &SkewForm, shape: &SeedShape) -> (Model, IntMatrix, i64) {
    let (model, a) = match shape {
        SeedShape::OneVector { v, m } => (Model::One { m: *m }, rows(&complement(v), v)),
        SeedShape::OppositePair { v, m1, m2 } => {
            (Model::Opposite { m1: *m1, m2: *m2 }, rows(&complement(v), v))
        }
        SeedShape::UnimodularPair { v1, m1, v2, m2 } | SeedShape::SublatticePair { v1, m1, v2, m2, .. } => {
            (Model::Basis { m1: *m1, m2: *m2 }, rows(v1, v2))
        }
    };
    let v1 = LatticeVector::new(a.row(0).to_vec());
    let v2 = LatticeVector::new(a.row(1).to_vec());
    let k = form.eval(&v1, &v2).abs();
    (model, a, k)
}

fn z(e: [i64; 2]) -> LaurentPoly {
    LaurentPoly::unit_monomial(e.into())
}

fn model_generators(model: Model, k: i64) -> (Vec<LaurentPoly>, Vec<&'static str>) {
    let t1 = LaurentPoly::binomial(&ExponentVector::from([k, 0]));
    let t2 = LaurentPoly::binomial(&ExponentVector::from([0, k]));
    match model {
        Model::One { m } => (
            vec![z([1, 0]), z([-1, 0]), z([0, 1]), &t1.pow(m) * &z([0, -1])],
            vec!["z1", "z1^-1", "z2", "(1+z1^K)^m/z2"],
        ),
        Model::Opposite { m1, m2 } => (
            vec![z([1, 0]), z([-1, 0]), &t1.pow(m2) * &z([0, 1]), &t1.pow(m1) * &z([0, -1])],
            vec!["z1", "z1^-1", "z2*(1+z1^K)^m2", "(1+z1^K)^m1/z2"],
        ),
        Model::Basis { m1, m2 } => (
            vec![z([1, 0]), z([0, 1]), &t2.pow(m1) * &z([-1, 0]), &t1.pow(m2) * &z([0, -1])],
            vec!["z1", "z2", "(1+z2^K)^m1/z1", "(1+z1^K)^m2/z2"],
        ),
    }
}

/// Generators of the upper bound in the original coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorPresentation {
    pub shape: ShapeTag,
    pub generators: Vec<LaurentPoly>,
    /// Model names of the generators, in the rectified variables `z1, z2`.
    pub labels: Vec<&'static str>,
    /// `K` in the model names.
    pub k: i64,
    /// Exponent substitution `n = A·m` into the model variables; `None` when `A = 1`.
    pub coordinate_change: Option<IntMatrix>,
    model: Model,
    substitution: IntMatrix,
}

impl GeneratorPresentation {
    /// Writes `w` as a polynomial in the generators, if possible.
    pub fn decompose(&self, w: &LaurentPoly) -> Option<Decomposition> {
        let wz = w.monomial_substitution(&self.substitution).ok()?;
        decompose_model(&wz, self.model, self.k)
    }

    /// Monomial in the generators, `Π g_i^{e_i}`.
    pub fn product(&self, exps: &[u32]) -> LaurentPoly {
        exps.iter()
            .zip(&self.generators)
            .fold(LaurentPoly::one(2), |acc, (&e, g)| &acc * &g.pow(e))
    }
}

pub fn generators_for(form: &SkewForm, collection: &ExchangeCollection) -> Result<GeneratorPresentation, UpperBoundError> {
    let shape = detect_shape(form, collection)?;
    let tag = shape.tag().ok_or_else(|| {
        UpperBoundError::UnsupportedShape("non-collinear pair with determinant ≠ ±1".into())
    })?;
    let (model, a, k) = rectify(form, &shape);
    let inverse = a.inverse().expect("unimodular");
    let (gz, labels) = model_generators(model, k);
    let generators = gz
        .iter()
        .map(|g| g.monomial_substitution(&inverse).expect("unimodular"))
        .collect();
    let coordinate_change = (a != IntMatrix::identity(2)).then(|| a.clone());
    Ok(GeneratorPresentation { shape: tag, generators, labels, k, coordinate_change, model, substitution: a })
}

/// `W = Σ c · Π g_i^{e_i}` over the generators of a presentation.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub terms: Vec<(Rational, Vec<u32>)>,
}

impl Decomposition {
    pub fn reconstruct(&self, p: &GeneratorPresentation) -> LaurentPoly {
        let mut out = LaurentPoly::zero(2);
        for (c, e) in &self.terms {
            out = &out + &p.product(e).scale(c);
        }
        out
    }
}

/// Terms of `w` whose `axis` coordinate equals `level`, with that coordinate set to zero.
fn level_piece(w: &LaurentPoly, axis: usize, level: i64) -> LaurentPoly {
    let mut out = LaurentPoly::zero(2);
    for (e, c) in w.terms() {
        if e.coords()[axis] == level {
            let mut v = e.coords().to_vec();
            v[axis] = 0;
            out.add_term(ExponentVector::new(v), c.clone());
        }
    }
    out
}

fn min_level(w: &LaurentPoly, axis: usize) -> Option<i64> {
    w.terms().map(|(e, _)| e.coords()[axis]).min()
}

fn levels(w: &LaurentPoly, axis: usize) -> Vec<i64> {
    let mut l: Vec<i64> = w.terms().map(|(e, _)| e.coords()[axis]).collect();
    l.sort_unstable();
    l.dedup();
    l
}

fn split(i: i64) -> (u32, u32) {
    (i.max(0) as u32, (-i).max(0) as u32)
}

struct Powers<'a> {
    gens: &'a [LaurentPoly],
    cache: HashMap<(usize, u32), LaurentPoly>,
}

impl Powers<'_> {
    fn product(&mut self, exps: &[u32]) -> LaurentPoly {
        let mut out = LaurentPoly::one(2);
        for (i, &e) in exps.iter().enumerate() {
            if e > 0 {
                let p = self.cache.entry((i, e)).or_insert_with(|| self.gens[i].pow(e));
                out = &out * p;
            }
        }
        out
    }
}

fn decompose_model(w: &LaurentPoly, model: Model, k: i64) -> Option<Decomposition> {
    let t1 = ExponentVector::from([k, 0]);
    let t2 = ExponentVector::from([0, k]);
    let mut terms = Vec::new();
    // quotient of a level by the required binomial power, or failure
    let divide = |piece: &LaurentPoly, dir: &ExponentVector, e: u32| -> Option<LaurentPoly> {
        binomial_divide(piece, dir, e).ok()?.quotient().cloned()
    };
    match model {
        Model::One { m } | Model::Opposite { m1: m, .. } => {
            // levels along z2 are independent: each generator power below is homogeneous
            for l in levels(w, 1) {
                let piece = level_piece(w, 1, l);
                let p = l.unsigned_abs() as u32;
                let (q, h, g) = match (model, l.signum()) {
                    (_, -1) => (divide(&piece, &t1, m * p)?, 0, p),
                    (Model::One { .. }, _) => (piece, p, 0),
                    (Model::Opposite { m2, .. }, 1) => (divide(&piece, &t1, m2 * p)?, p, 0),
                    _ => (piece, 0, 0),
                };
                for (e, c) in q.terms() {
                    let (a, b) = split(e.coords()[0]);
                    terms.push((c.clone(), vec![a, b, h, g]));
                }
            }
        }
        Model::Basis { m1, m2 } => {
            let (gens, _) = model_generators(model, k);
            let mut powers = Powers { gens: &gens, cache: HashMap::new() };
            let mut r = w.clone();
            while let Some(i) = min_level(&r, 0).filter(|&i| i < 0) {
                let n = (-i) as u32;
                let q = divide(&level_piece(&r, 0, i), &t2, m1 * n)?;
                for (e, c) in q.terms() {
                    let (a, b) = split(e.coords()[1]);
                    let exps = vec![0, a, n, b];
                    r = &r - &powers.product(&exps).scale(c);
                    terms.push((c.clone(), exps));
                }
            }
            for j in levels(&r, 1) {
                let piece = level_piece(&r, 1, j);
                if j >= 0 {
                    for (e, c) in piece.terms() {
                        terms.push((c.clone(), vec![e.coords()[0] as u32, j as u32, 0, 0]));
                    }
                    continue;
                }
                let p = (-j) as u32;
                let q = divide(&piece, &t1, m2 * p)?;
                for (e, c) in q.terms() {
                    let i = e.coords()[0];
                    if i < 0 {
                        return None;
                    }
                    terms.push((c.clone(), vec![i as u32, 0, 0, p]));
                }
            }
        }
    }
    terms.retain(|(c, _)| !c.is_zero());
    Some(Decomposition { terms })
}

/// Constructive membership through the generator presentation.
pub fn member_via_generators(
    w: &LaurentPoly,
    form: &SkewForm,
    collection: &ExchangeCollection,
) -> Result<bool, UpperBoundError> {
    Ok(generators_for(form, collection)?.decompose(w).is_some())
}

/// Membership for any non-collinear pair, unimodular or not.
///
/// The rows `v1, v2` pull exponents back along `m ↦ (m·v1, m·v2)`, which carries the pair to
/// the basis pair of a lattice with form `k·det`. `W` is a member exactly when its pull-back
/// is a member there.
pub fn member_via_sublattice(
    w: &LaurentPoly,
    form: &SkewForm,
    collection: &ExchangeCollection,
) -> Result<bool, UpperBoundError> {
    let shape = detect_shape(form, collection)?;
    if !matches!(shape, SeedShape::UnimodularPair { .. } | SeedShape::SublatticePair { .. }) {
        return Err(UpperBoundError::UnsupportedShape("not a non-collinear pair".into()));
    }
    let (model, a, k) = rectify(form, &shape);
    let wz = w.monomial_substitution(&a)?;
    Ok(decompose_model(&wz, model, k).is_some())
}
