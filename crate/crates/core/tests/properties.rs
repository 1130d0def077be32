use std::collections::BTreeSet;

use proptest::prelude::*;

use potmut::algebra::{binomial_divide, is_divisible_up_to_unit, rat, BinomialDivision};
use potmut::io::{explore_orbit, FormSpec, SeedDocument};
use potmut::lattice::{pl_mutate, reflect, LatticeMap};
use potmut::mutation::{fn_mutate, fn_mutate_iter};
use potmut::upperbound::{generators_for, member_via_generators, mutation_is_laurent};
use potmut::{
    check_property_v, BinomialRationalFn, ExchangeCollection, ExponentVector, IntMatrix, LatticeVector,
    LaurentPoly, Rational, SkewForm,
};

fn laurent(max_terms: usize, max_exp: i64, max_coeff: i64) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(((-max_exp..=max_exp), (-max_exp..=max_exp), (-max_coeff..=max_coeff)), 0..=max_terms)
        .prop_map(|terms| {
            LaurentPoly::from_terms(
                2,
                terms.into_iter().map(|(a, b, c)| (ExponentVector::new(vec![a, b]), rat(c, 1))),
            )
        })
}

fn nonzero_laurent() -> impl Strategy<Value = LaurentPoly> {
    laurent(5, 3, 9).prop_filter("nonzero", |w| !w.is_zero())
}

fn primitive() -> impl Strategy<Value = LatticeVector> {
    ((-3i64..=3), (-3i64..=3))
        .prop_filter("primitive", |(a, b)| num_integer::gcd(*a, *b) == 1)
        .prop_map(|(a, b)| LatticeVector::from([a, b]))
}

fn form() -> impl Strategy<Value = SkewForm> {
    prop_oneof![1i64..=3, -3i64..=-1].prop_map(SkewForm::rank2)
}

fn exponent() -> impl Strategy<Value = ExponentVector> {
    ((-3i64..=3), (-3i64..=3))
        .prop_filter("nonzero", |(a, b)| *a != 0 || *b != 0)
        .prop_map(|(a, b)| ExponentVector::new(vec![a, b]))
}

/// Products of elementary matrices with determinant 1.
fn sl2() -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0usize..4, 1i64..=2), 1..=4).prop_map(|steps| {
        steps.into_iter().fold(IntMatrix::identity(2), |acc, (kind, t)| {
            let e = match kind {
                0 => IntMatrix::from_rows(vec![vec![1, t], vec![0, 1]]),
                1 => IntMatrix::from_rows(vec![vec![1, -t], vec![0, 1]]),
                2 => IntMatrix::from_rows(vec![vec![1, 0], vec![t, 1]]),
                _ => IntMatrix::from_rows(vec![vec![0, -1], vec![1, 0]]),
            };
            acc.mul(&e)
        })
    })
}

fn point() -> impl Strategy<Value = Vec<Rational>> {
    let coord = ((-9i64..=9).prop_filter("nonzero", |n| *n != 0), 1i64..=7).prop_map(|(n, d)| rat(n, d));
    prop::collection::vec(coord, 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in laurent(4, 3, 9), b in laurent(4, 3, 9), c in laurent(4, 3, 9)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn division_reconstructs(w in laurent(4, 3, 9), a in exponent(), e in 0u32..=3, f in 0u32..=2) {
        let w = &w * &LaurentPoly::binomial(&a).pow(f);
        if let BinomialDivision::Quotient(q) = binomial_divide(&w, &a, e).unwrap() {
            prop_assert_eq!(&q * &LaurentPoly::binomial(&a).pow(e), w.clone());
        }
        prop_assert!(matches!(binomial_divide(&w, &a, f.min(e)).unwrap(), BinomialDivision::Quotient(_)));
    }

    #[test]
    fn divisibility_is_unit_invariant(w in laurent(4, 3, 9), a in exponent(), e in 0u32..=3, f in 0u32..=2) {
        let w = &w * &LaurentPoly::binomial(&a).pow(f);
        let neg = ExponentVector::new(a.coords().iter().map(|c| -c).collect());
        prop_assert_eq!(is_divisible_up_to_unit(&w, &a, e).unwrap(), is_divisible_up_to_unit(&w, &neg, e).unwrap());
    }

    #[test]
    fn division_agrees_with_evaluation(w in laurent(4, 3, 9), a in exponent(), e in 1u32..=3, pts in prop::collection::vec(point(), 20)) {
        let w = &w * &LaurentPoly::binomial(&a).pow(e);
        let BinomialDivision::Quotient(q) = binomial_divide(&w, &a, e).unwrap() else {
            return Err(TestCaseError::fail("constructed multiple not divisible"));
        };
        let d = LaurentPoly::binomial(&a).pow(e);
        for p in pts {
            let dv = d.evaluate(&p).unwrap();
            if dv != rat(0, 1) {
                prop_assert_eq!(w.evaluate(&p).unwrap() / dv, q.evaluate(&p).unwrap());
            }
        }
    }

    #[test]
    fn grading_reassembles(w in laurent(6, 3, 9), u in primitive()) {
        let sum = w.grade_by(&u).values().fold(LaurentPoly::zero(2), |acc, p| &acc + p);
        prop_assert_eq!(sum, w);
    }

    #[test]
    fn content_is_multiplicative(a in nonzero_laurent(), b in nonzero_laurent()) {
        prop_assert_eq!((&a * &b).content().unwrap(), a.content().unwrap() * b.content().unwrap());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in laurent(4, 3, 9), b in laurent(4, 3, 9), p in point()) {
        prop_assert_eq!((&a * &b).evaluate(&p).unwrap(), a.evaluate(&p).unwrap() * b.evaluate(&p).unwrap());
        prop_assert_eq!((&a + &b).evaluate(&p).unwrap(), a.evaluate(&p).unwrap() + b.evaluate(&p).unwrap());
    }

    #[test]
    fn reflection_inverse(k in 1i64..=3, u in primitive(), x in -10i64..=10, y in -10i64..=10) {
        let w = SkewForm::rank2(k);
        let v = LatticeVector::from([x, y]);
        prop_assert_eq!(reflect(&w.negated(), &u, &reflect(&w, &u, &v)), v);
    }

    #[test]
    fn pl_scaling(k in 1i64..=3, u in primitive(), x in -10i64..=10, y in -10i64..=10, a in 1i64..=3, b in 1i64..=3) {
        let w = SkewForm::rank2(k);
        let v = LatticeVector::from([x, y]);
        let iterated = (0..a * b * b).fold(v.clone(), |acc, _| pl_mutate(&w, &u, &acc));
        prop_assert_eq!(pl_mutate(&w.scaled(a), &u.scale(b), &v), iterated);
    }

    #[test]
    fn pl_functoriality(k in 1i64..=3, a in sl2(), u in primitive(), x in -6i64..=6, y in -6i64..=6) {
        // det A = 1 preserves ω_k, so A is a morphism (L, ω_k) → (L, ω_k).
        let w = SkewForm::rank2(k);
        let f = LatticeMap::new(a, w.clone(), w.clone()).unwrap();
        let v = LatticeVector::from([x, y]);
        let lhs = f.push_forward(&pl_mutate(&w, &u, &v)).unwrap();
        let rhs = pl_mutate(&w, &f.push_forward(&u).unwrap(), &f.push_forward(&v).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn birational_inverse_and_reflection(w in laurent(8, 4, 9), u in primitive(), om in form()) {
        let f: BinomialRationalFn = w.clone().into();
        let there = fn_mutate(&f, &u, &om).unwrap();
        prop_assert_eq!(fn_mutate(&there, &u.neg(), &om.negated()).unwrap(), f);
        let r: BinomialRationalFn = potmut::mutation::reflection_automorphism(&w, &u, &om).into();
        prop_assert_eq!(fn_mutate(&there, &u.neg(), &om).unwrap(), r);
    }

    #[test]
    fn substitution_functoriality(w in laurent(5, 3, 9), u in primitive(), a in sl2(), k in 1i64..=3) {
        // f* X^m = X^{Aᵀ m} satisfies μ_u f* = f* μ_{Au}.
        let om = SkewForm::rank2(k);
        let at = a.transpose();
        let au = LatticeVector::new(a.mul_vec(u.coords()));
        let f: BinomialRationalFn = w.clone().into();
        let lhs = fn_mutate(&f.monomial_substitution(&at).unwrap(), &u, &om).unwrap();
        let rhs = fn_mutate(&f, &au, &om).unwrap().monomial_substitution(&at).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn integer_inputs_stay_integral(w in laurent(4, 3, 9), u in primitive(), om in form(), e in 0u32..=3, m in 1u32..=3) {
        let w = &w * &LaurentPoly::binomial(&om.i_omega(&u)).pow(e);
        if let Ok(img) = fn_mutate_iter(&w.clone().into(), &u, &om, m).unwrap().as_laurent() {
            prop_assert!(img.has_integer_coefficients());
        }
    }

    #[test]
    fn membership_is_the_intersection_over_directions(w in laurent(5, 3, 5), u in primitive(), m1 in 1u32..=3, m2 in 1u32..=3, om in form()) {
        let c = ExchangeCollection::from_entries(2, vec![(u.clone(), m1), (u.neg(), m2)]).unwrap();
        let report = check_property_v(&w, &c, &om);
        let each = c.iter().all(|(v, m)| mutation_is_laurent(&w, v, &om, m).laurent);
        prop_assert_eq!(report.verdict, each);
        prop_assert_eq!(member_via_generators(&w, &om, &c).unwrap(), each);
    }

    #[test]
    fn generators_are_members(u in primitive(), a in sl2(), m1 in 1u32..=3, m2 in 1u32..=3, om in form(), shape in 0usize..3) {
        let entries = match shape {
            0 => vec![(u, m1)],
            1 => vec![(u.clone(), m1), (u.neg(), m2)],
            _ => vec![(LatticeVector::new(a.column(0)), m1), (LatticeVector::new(a.column(1)), m2)],
        };
        let c = ExchangeCollection::from_entries(2, entries).unwrap();
        let p = generators_for(&om, &c).unwrap();
        for g in &p.generators {
            prop_assert!(check_property_v(g, &c, &om).verdict, "generator {} of {}", g, c);
        }
    }

    #[test]
    fn membership_is_sl2_invariant(w in laurent(5, 3, 5), a in sl2(), u in primitive(), m1 in 1u32..=3, m2 in 1u32..=3, k in 1i64..=3) {
        // A pushes V forward and W is pulled back by X^m ↦ X^{Aᵀ m}.
        let om = SkewForm::rank2(k);
        let c = ExchangeCollection::from_entries(2, vec![(u.clone(), m1), (LatticeVector::from([1, 0]), m2)]).unwrap();
        let f = LatticeMap::new(a.clone(), om.clone(), om.clone()).unwrap();
        let pushed = c.push_forward(&f).unwrap();
        let pulled = w.monomial_substitution(&a.transpose()).unwrap();
        prop_assert_eq!(check_property_v(&w, &pushed, &om).verdict, check_property_v(&pulled, &c, &om).verdict);
    }

    #[test]
    fn seed_documents_round_trip(
        k in -3i64..=3,
        vectors in prop::collection::vec((primitive(), 1u32..=3), 1..=4),
        w in prop::option::of(laurent(4, 3, 9)),
        name in prop::option::of("[a-z][a-z0-9-]{0,8}"),
    ) {
        let c = ExchangeCollection::from_entries(2, vectors).unwrap();
        let doc = SeedDocument {
            comments: vec![" generated".to_string()],
            name,
            rank: 2,
            form: FormSpec::K(k),
            vectors: c.iter().map(|(v, m)| (v.clone(), m)).collect(),
            potential: w.map(Into::into),
        };
        let text = doc.render();
        let back = SeedDocument::parse(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.render(), text);
    }

    #[test]
    fn orbit_edges_are_mutations(k in 1i64..=3, vectors in prop::collection::vec((primitive(), 1u32..=2), 1..=3), depth in 0usize..=3) {
        let om = SkewForm::rank2(k);
        let c = ExchangeCollection::from_entries(2, vectors).unwrap();
        let g = explore_orbit(&om, &c, None, depth).unwrap();
        let keys: BTreeSet<&String> = g.nodes.iter().map(|n| &n.key).collect();
        prop_assert_eq!(keys.len(), g.nodes.len());
        for e in &g.edges {
            let from = &g.nodes[e.from].collection;
            prop_assert_eq!(&from.mutate(&e.direction, &om).unwrap(), &g.nodes[e.to].collection);
        }
        prop_assert!(g.nodes.iter().all(|n| n.depth <= depth));
    }
}
