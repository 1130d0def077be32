//! Acceptance suite. Runs without the libtest harness so that every criterion prints
//! exactly one `PASS`/`FAIL` line; the process exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::Command;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use potmut::algebra::rat;
use potmut::io::SeedDocument;
use potmut::lattice::{pl_mutate, pl_mutate_inv, reflect};
use potmut::mutation::{b_matrix, collection_mutate_ordered, fn_mutate, mutate_laurent, reflection_automorphism};
use potmut::random::{random_laurent, random_primitive_vector, random_sl2, rng};
use potmut::upperbound::{
    constructed_member, member_exponents, member_via_generators, mutation_is_laurent, sample_ub_element,
    verify_ring_identities, verify_vlemma, SampleSize,
};
use potmut::{
    generators_for, ub_member, BinomialRationalFn, CSeed, ExchangeCollection, ExponentVector, IntMatrix,
    LatticeVector, LaurentPoly, SkewForm,
};

struct Outcome {
    cases: usize,
    failures: Vec<String>,
    note: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome { cases: 0, failures: Vec::new(), note: String::new() }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(describe());
        }
    }
}

fn lv(a: i64, b: i64) -> LatticeVector {
    LatticeVector::from([a, b])
}

fn sign() -> impl FnMut(&mut rand_chacha::ChaCha8Rng) -> i64 {
    |g| if g.gen_bool(0.5) { 1 } else { -1 }
}

// ---------------------------------------------------------------------------
// 1. Piecewise-linear identities

fn criterion_pl() -> Outcome {
    let mut out = Outcome::new();
    let dirs = [lv(0, 1), lv(1, 0), lv(1, 1), lv(1, -1), lv(2, 1)];
    for k in 1..=3i64 {
        let w = SkewForm::rank2(k);
        for u in &dirs {
            for x in -10..=10 {
                for y in -10..=10 {
                    let v = lv(x, y);
                    // Direct formulas with ω(u, v) = k (u1 v2 − u2 v1).
                    let om = k * (u.coords()[0] * y - u.coords()[1] * x);
                    let refl = v.add_scaled(u, om);
                    let fwd = pl_mutate(&w, u, &v);
                    out.check(fwd == v.add_scaled(u, om.max(0)), || format!("μ formula k={k} u={u} v={v}"));
                    out.check(pl_mutate(&w, &u.neg(), &fwd) == refl, || format!("μ_-u μ_u = R k={k} u={u} v={v}"));
                    out.check(reflect(&w, u, &v) == refl, || format!("R formula k={k} u={u} v={v}"));
                    out.check(pl_mutate_inv(&w, u, &fwd) == v, || format!("inverse k={k} u={u} v={v}"));
                    out.check(pl_mutate(&w, u, &pl_mutate_inv(&w, u, &v)) == v, || format!("inverse' k={k} u={u} v={v}"));
                    for a in 1..=3i64 {
                        for b in 1..=3i64 {
                            let scaled = reflect(&w.scaled(a), &u.scale(b), &v);
                            let iterated = (0..a * b * b).fold(v.clone(), |acc, _| reflect(&w, u, &acc));
                            out.check(scaled == iterated, || format!("R_(aω,bu) k={k} u={u} v={v} a={a} b={b}"));
                        }
                    }
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// 2. Birational identities

fn criterion_birational() -> Outcome {
    let mut out = Outcome::new();
    let mut g = rng(2);
    while out.cases < 400 {
        let w = random_laurent(&mut g, 2, 8, 4, 9);
        if w.is_zero() {
            continue;
        }
        let k = g.gen_range(1..=3) * sign()(&mut g);
        let form = SkewForm::rank2(k);
        let u = random_primitive_vector(&mut g, 2, 3);
        let f: BinomialRationalFn = w.clone().into();
        let there = fn_mutate(&f, &u, &form).expect("Laurent input");
        let back = fn_mutate(&there, &u.neg(), &form.negated()).expect("invariant denominators");
        out.check(back == f, || format!("inverse: W={w} u={u} k={k} got {back}"));
        let rr = fn_mutate(&there, &u.neg(), &form).expect("invariant denominators");
        let expected: BinomialRationalFn = reflection_automorphism(&w, &u, &form).into();
        out.check(rr == expected, || format!("μ_-u μ_u = R: W={w} u={u} k={k} got {rr}"));
    }
    out
}

// ---------------------------------------------------------------------------
// 3. Laurent criterion against a numeric oracle

type Poly = BTreeMap<(i64, i64), BigRational>;

fn to_poly(w: &LaurentPoly) -> Poly {
    w.terms().map(|(e, c)| ((e.coords()[0], e.coords()[1]), c.clone())).collect()
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = (ea.0 + eb.0, ea.1 + eb.1);
            let c = out.entry(e).or_insert_with(BigRational::zero);
            *c += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn binomial_pow(b: (i64, i64), n: u32) -> Poly {
    let mut out: Poly = [((0, 0), BigRational::one())].into();
    let base: Poly = [((0, 0), BigRational::one()), (b, BigRational::one())].into();
    for _ in 0..n {
        out = poly_mul(&out, &base);
    }
    out
}

fn rpow(x: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

fn eval(p: &Poly, x: &BigRational, y: &BigRational) -> BigRational {
    p.iter().fold(BigRational::zero(), |acc, (e, c)| acc + c * rpow(x, e.0) * rpow(y, e.1))
}

/// Is `p` divisible by `(1 + X^b)^n` among Laurent polynomials? Decided line by line along
/// the primitive direction of `b` with univariate long division.
fn divisible_by_binomial(p: &Poly, b: (i64, i64), n: u32) -> bool {
    let gcd = b.0.gcd(&b.1);
    let b0 = (b.0 / gcd, b.1 / gcd);
    let norm = b0.0 * b0.0 + b0.1 * b0.1;
    let mut lines: BTreeMap<i64, Vec<(i64, BigRational)>> = BTreeMap::new();
    for (e, c) in p {
        lines.entry(e.0 * b0.1 - e.1 * b0.0).or_default().push((e.0 * b0.0 + e.1 * b0.1, c.clone()));
    }
    for terms in lines.values() {
        let lo = terms.iter().map(|t| t.0).min().expect("nonempty");
        let deg = terms.iter().map(|t| (t.0 - lo) / norm).max().expect("nonempty") as usize;
        let mut coeffs = vec![BigRational::zero(); deg + 1];
        for (s, c) in terms {
            coeffs[((s - lo) / norm) as usize] = c.clone();
        }
        let g = gcd as usize;
        for _ in 0..n {
            // Divide by 1 + y^g from the top.
            if coeffs.len() <= g {
                return coeffs.iter().all(Zero::is_zero);
            }
            let mut q = vec![BigRational::zero(); coeffs.len() - g];
            for i in (g..coeffs.len()).rev() {
                let t = coeffs[i].clone();
                q[i - g] = t.clone();
                coeffs[i] = BigRational::zero();
                coeffs[i - g] -= t;
            }
            if coeffs.iter().any(|c| !c.is_zero()) {
                return false;
            }
            coeffs = q;
        }
    }
    true
}

fn random_point<R: Rng>(g: &mut R) -> BigRational {
    loop {
        let n = g.gen_range(-9i64..=9);
        let d = g.gen_range(1i64..=7);
        if n != 0 {
            return BigRational::new(BigInt::from(n), BigInt::from(d));
        }
    }
}

/// A function that is Laurent-mutable by construction with probability about one half.
fn laurent_candidate<R: Rng>(g: &mut R, b: &ExponentVector) -> LaurentPoly {
    let base = random_laurent(g, 2, 4, 3, 6);
    match g.gen_range(0..3) {
        0 => base,
        1 => &base * &LaurentPoly::binomial(b).pow(g.gen_range(1..=4)),
        _ => &(&base * &LaurentPoly::binomial(b).pow(g.gen_range(1..=4))) + &random_laurent(g, 2, 1, 3, 3),
    }
}

fn criterion_lemma_oracle() -> Outcome {
    let mut out = Outcome::new();
    let mut g = rng(3);
    let mut laurent_count = 0;
    while out.cases < 600 {
        let k = g.gen_range(1..=3) * sign()(&mut g);
        let form = SkewForm::rank2(k);
        let u = random_primitive_vector(&mut g, 2, 2);
        let m = g.gen_range(1..=3u32);
        let (u1, u2) = (u.coords()[0], u.coords()[1]);
        let b = (-k * u2, k * u1);
        let w = laurent_candidate(&mut g, &ExponentVector::new(vec![b.0, b.1]));
        if w.is_zero() {
            continue;
        }
        let verdict = mutation_is_laurent(&w, &u, &form, m).laurent;

        // Oracle: N = Σ c X^e (1 + X^b)^{m(u,e) + L} and the image is N / (1 + X^b)^L.
        let wp = to_poly(&w);
        let grades: Vec<i64> = wp.keys().map(|e| m as i64 * (u1 * e.0 + u2 * e.1)).collect();
        let big_l = grades.iter().map(|l| (-l).max(0)).max().unwrap_or(0) as u32;
        let mut numer = Poly::new();
        for ((e, c), l) in wp.iter().zip(&grades) {
            let term: Poly = [(*e, c.clone())].into();
            for (e2, c2) in poly_mul(&term, &binomial_pow(b, (l + big_l as i64) as u32)) {
                *numer.entry(e2).or_insert_with(BigRational::zero) += c2;
            }
        }
        numer.retain(|_, c| !c.is_zero());
        let oracle = divisible_by_binomial(&numer, b, big_l);
        laurent_count += oracle as usize;

        // Both sides evaluated at random rational points.
        let image = mutate_laurent(&w, &u, &form, m);
        let mut points_ok = true;
        let mut tried = 0;
        while tried < 20 {
            let (x, y) = (random_point(&mut g), random_point(&mut g));
            let d = BigRational::one() + rpow(&x, b.0) * rpow(&y, b.1);
            if d.is_zero() {
                continue;
            }
            tried += 1;
            let direct = eval(&numer, &x, &y) / num_traits::pow(d.clone(), big_l as usize);
            let lib = image.evaluate(&[x.clone(), y.clone()]).expect("nonzero denominators");
            points_ok &= direct == lib;
            if verdict {
                let p = image.as_laurent().expect("Laurent verdict");
                points_ok &= to_poly(&p).is_empty() == numer.is_empty()
                    && eval(&to_poly(&p), &x, &y) * num_traits::pow(d, big_l as usize) == eval(&numer, &x, &y);
            }
        }
        out.check(verdict == oracle && points_ok && image.is_laurent() == verdict, || {
            format!("W={w} u={u} k={k} m={m}: verdict {verdict}, oracle {oracle}, points {points_ok}")
        });
    }
    out.note = format!(", {laurent_count} Laurent");
    out
}

// ---------------------------------------------------------------------------
// 4. Generator presentations against property (V)

fn shape_seed<R: Rng>(g: &mut R, shape: usize) -> (SkewForm, ExchangeCollection) {
    let k = g.gen_range(1..=3) * if g.gen_bool(0.5) { 1 } else { -1 };
    let (m1, m2) = (g.gen_range(1..=3), g.gen_range(1..=3));
    let entries = match shape {
        0 => vec![(random_primitive_vector(g, 2, 2), m1)],
        1 => {
            let v = random_primitive_vector(g, 2, 2);
            vec![(v.clone(), m1), (v.neg(), m2)]
        }
        _ => {
            let a: IntMatrix = random_sl2(g, 2);
            vec![(LatticeVector::new(a.column(0)), m1), (LatticeVector::new(a.column(1)), m2)]
        }
    };
    (SkewForm::rank2(k), ExchangeCollection::from_entries(2, entries).expect("rank 2"))
}

fn criterion_generators() -> Outcome {
    let mut out = Outcome::new();
    let mut g = rng(4);
    let mut members = [0usize; 3];
    for shape in 0..3 {
        for i in 0..240 {
            let (form, c) = shape_seed(&mut g, shape);
            let p = generators_for(&form, &c).expect("supported shape");
            let w = if i % 2 == 0 {
                sample_ub_element(&p, SampleSize { terms: 3, max_power: 2, max_coeff: 4 }, g.gen())
            } else {
                random_laurent(&mut g, 2, 5, 3, 5)
            };
            if w.is_zero() {
                continue;
            }
            let truth = ub_member(&w, &CSeed::base(form.clone(), c.clone()).expect("rank 2")).expect("base").verdict;
            let via = member_via_generators(&w, &form, &c).expect("supported shape");
            members[shape] += truth as usize;
            out.check(truth == via && (i % 2 == 1 || truth), || {
                format!("shape {shape} form k={:?} V={c} W={w}: ub {truth}, generators {via}", form.k())
            });
        }
    }
    out.note = format!(", members per shape {members:?}");
    out
}

// ---------------------------------------------------------------------------
// 5. Mutation invariance of the upper bound

fn bounded_member<R: Rng>(g: &mut R, form: &SkewForm, c: &ExchangeCollection) -> Option<LaurentPoly> {
    (0..10).find_map(|_| {
        let m = ExponentVector::new(vec![g.gen_range(-3..=3), g.gen_range(-3..=3)]);
        let alpha = member_exponents(form, c, &m, 8)?;
        let size: u64 = alpha.iter().map(|(_, a)| *a as u64 + 1).product();
        (size <= 40).then(|| constructed_member(form, c, &m, 8)).flatten()
    })
}

fn criterion_vlemma() -> Outcome {
    let mut out = Outcome::new();
    let mut g = rng(5);
    let sublattice = [(lv(1, 0), lv(1, 2)), (lv(1, 1), lv(1, -1)), (lv(2, 1), lv(1, 2)), (lv(1, 0), lv(1, 3)), (lv(0, 1), lv(3, 1))];
    let mut before = 0;
    for i in 0..600 {
        let kind = i % 3;
        let (form, c) = match kind {
            0 | 1 => shape_seed(&mut g, kind + 1),
            _ => {
                let (a, b) = sublattice.choose(&mut g).expect("nonempty").clone();
                let k = g.gen_range(1..=3) * sign()(&mut g);
                let entries = vec![(a, g.gen_range(1..=3)), (b, g.gen_range(1..=3))];
                (SkewForm::rank2(k), ExchangeCollection::from_entries(2, entries).expect("rank 2"))
            }
        };
        let member = match generators_for(&form, &c) {
            Ok(p) => Some(sample_ub_element(&p, SampleSize { terms: 2, max_power: 2, max_coeff: 3 }, g.gen())),
            Err(_) => bounded_member(&mut g, &form, &c),
        };
        let w = match (g.gen_range(0..4), member) {
            (0 | 1, Some(w)) => w,
            (2, Some(w)) => &w + &random_laurent(&mut g, 2, 1, 2, 3),
            _ => random_laurent(&mut g, 2, 5, 3, 5),
        };
        let dirs: Vec<LatticeVector> = c.iter().map(|(v, _)| v.clone()).collect();
        let d = dirs.choose(&mut g).expect("nonempty").clone();
        let seed = CSeed::base(form.clone(), c.clone()).expect("rank 2");
        let res = verify_vlemma(&seed, &d, &w);
        before += res.as_ref().is_ok_and(|r| r.member_before) as usize;
        out.check(res.as_ref().is_ok_and(|r| r.holds()), || format!("k={:?} V={c} d={d} W={w}: {res:?}", form.k()));
    }
    out.note = format!(", {before} members before mutation");
    out
}

// ---------------------------------------------------------------------------
// 6. Ring identities

fn criterion_identities() -> Outcome {
    let mut out = Outcome::new();
    for k in 1..=3 {
        for m2 in 1..=2 {
            let r = verify_ring_identities(k, m2);
            out.check(r.all(), || format!("k={k} m2={m2}: {r:?}"));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// 7. Exchange-matrix commutation

fn matrix_mutation(b: &[Vec<i64>], k: usize) -> Vec<Vec<i64>> {
    let n = b.len();
    let mut out = b.to_vec();
    for i in 0..n {
        for j in 0..n {
            out[i][j] = if i == k || j == k {
                -b[i][j]
            } else {
                b[i][j] + b[i][k].signum() * (b[i][k] * b[k][j]).max(0)
            };
        }
    }
    out
}

fn criterion_bmatrix() -> Outcome {
    let mut out = Outcome::new();
    let mut g = rng(7);
    while out.cases < 300 {
        let n = g.gen_range(1..=6);
        let v: Vec<LatticeVector> = (0..n).map(|_| lv(g.gen_range(-5..=5), g.gen_range(-5..=5))).collect();
        if v.iter().any(LatticeVector::is_zero) {
            continue;
        }
        let form = SkewForm::rank2(g.gen_range(1..=3));
        let k = g.gen_range(0..n);
        let b = b_matrix(&v, &form);
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| form.eval(&v[i], &v[j])).collect())
            .collect();
        let mutated = b_matrix(&collection_mutate_ordered(&v, k, &form).expect("index"), &form);
        let lib = b.mutate(k).expect("index");
        let twice = lib.mutate(k).expect("index");
        out.check(
            b.matrix().as_rows() == rows.as_slice()
                && mutated.matrix().as_rows() == matrix_mutation(&rows, k).as_slice()
                && lib == mutated
                && twice == b,
            || format!("V={v:?} k={k} form={}", form.matrix()),
        );
    }
    out
}

// ---------------------------------------------------------------------------
// 8. Gauss content and integrality

fn content_oracle(w: &LaurentPoly) -> BigRational {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for (_, c) in w.terms() {
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    BigRational::new(num.abs(), den)
}

fn criterion_content() -> Outcome {
    let mut out = Outcome::new();
    let mut g = rng(8);
    while out.cases < 250 {
        let f = random_laurent(&mut g, 2, 6, 3, 12).scale(&rat(g.gen_range(1..=6), 1));
        let h = random_laurent(&mut g, 2, 6, 3, 12);
        if f.is_zero() || h.is_zero() {
            continue;
        }
        let prod = &f * &h;
        let lhs = prod.content().expect("nonzero");
        out.check(lhs == content_oracle(&f) * content_oracle(&h) && lhs == content_oracle(&prod), || {
            format!("content f={f} h={h}")
        });
    }
    let mut integral = 0;
    while integral < 120 {
        let form = SkewForm::rank2(g.gen_range(1..=3));
        let n = g.gen_range(1..=3);
        let entries: Vec<(LatticeVector, u32)> =
            (0..n).map(|_| (random_primitive_vector(&mut g, 2, 2), g.gen_range(1..=3))).collect();
        let c = ExchangeCollection::from_entries(2, entries).expect("rank 2");
        let Some(t) = bounded_member(&mut g, &form, &c) else { continue };
        let w = t.scale(&rat(g.gen_range(1..=5) * sign()(&mut g), 1));
        integral += 1;
        for (v, m) in c.iter() {
            let image = potmut::mutation::fn_mutate_iter(&w.clone().into(), v, &form, m)
                .ok()
                .and_then(|x| x.as_laurent().ok());
            out.check(image.as_ref().is_some_and(LaurentPoly::has_integer_coefficients), || {
                format!("integrality V={c} v={v} W={w}: {image:?}")
            });
        }
    }
    out.note = format!(", {integral} constructed integer inputs");
    out
}

// ---------------------------------------------------------------------------
// 9. Command line

fn criterion_cli() -> Outcome {
    let mut out = Outcome::new();
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("seeds");
    let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
        .expect("seeds directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "seed"))
        .collect();
    files.sort();
    for f in &files {
        let text = std::fs::read_to_string(f).expect("readable");
        let parsed = SeedDocument::parse(&text);
        out.check(parsed.as_ref().is_ok_and(|d| d.render() == text), || format!("round trip {}", f.display()));
    }
    let bin = env!("CARGO_BIN_EXE_potmut");
    for name in ["one-vector.seed", "opposite-pair-k1.seed", "basis-pair.seed"] {
        let o = Command::new(bin).arg("check-v").arg("--seed").arg(dir.join(name)).output().expect("run");
        let stdout = String::from_utf8_lossy(&o.stdout).to_string();
        out.check(o.status.success() && stdout.starts_with("verdict: true"), || format!("check-v {name}: {stdout}"));
    }
    let o = Command::new(bin).args(["verify", "--suite", "all"]).output().expect("run");
    out.check(o.status.success(), || format!("verify --suite all: {}", String::from_utf8_lossy(&o.stdout)));
    out.note = format!(", {} seed files", files.len());
    out
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("1 piecewise-linear identities", criterion_pl),
        ("2 birational identities", criterion_birational),
        ("3 Laurent criterion vs oracle", criterion_lemma_oracle),
        ("4 generator equivalence", criterion_generators),
        ("5 V-lemma", criterion_vlemma),
        ("6 ring identities", criterion_identities),
        ("7 exchange-matrix commutation", criterion_bmatrix),
        ("8 content and integrality", criterion_content),
        ("9 command line", criterion_cli),
    ];
    let results: Vec<(&str, Outcome)> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria.iter().map(|(name, f)| (*name, s.spawn(f))).collect();
        handles.into_iter().map(|(name, h)| (name, h.join().expect("criterion panicked"))).collect()
    });
    let mut all = true;
    for (name, o) in &results {
        let ok = o.failures.is_empty();
        all &= ok;
        println!(
            "{} criterion {name}: {}/{} checks passed{}",
            if ok { "PASS" } else { "FAIL" },
            o.cases - o.failures.len(),
            o.cases,
            o.note
        );
        for f in o.failures.iter().take(5) {
            println!("    {f}");
        }
    }
    if !all {
        std::process::exit(1);
    }
}
